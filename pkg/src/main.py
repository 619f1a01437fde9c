"""
This module contains the command-line interface of the UCPG quantum-walk search toolkit.

Commands:
- reduce: reduced Hamiltonian H_ra with the spectral summary and predictions.
- analyze: spectral data at one coupling factor and the gap profile around gamma_opt.
- evolve: success probability curves in reduced and/or full space.
- sweep: peak times over a list of sizes and the fitted scaling exponent.
- verify: the invariant suite, exit code 0 iff every check passes.
- special: closed-form check of the complete, bipartite or star graph.

Exit codes: 0 success, 1 verification failure, 2 usage, configuration or capacity error.

Classes:
- PrettyLogger: Custom logger class that formats log arguments in a pretty way.
"""

import functools
import logging
import os
import pprint
import sys

# Pylint Disable for specific import order
# pylint: disable=wrong-import-order,wrong-import-position
from dotenv import load_dotenv

load_dotenv()
# pylint: enable=wrong-import-order,wrong-import-position

import click
import numpy as np
from tqdm import tqdm

from ucpg_search import __version__
from ucpg_search.controllers import (
    BOTH,
    DEFAULT_GRID_MAX_N,
    MIN_FIT_POINTS,
    SweepCase,
    Tolerances,
    analyze_payload,
    case_config,
    evolve_config,
    fit_scaling,
    payload_to_frame,
    reduce_payload,
    rows_to_frame,
    run_sweep,
    run_verify,
    summarize,
)
from ucpg_search.dynamics import Space
from ucpg_search.exceptions import (
    CapacityException,
    ConfigurationException,
    DomainException,
    FitException,
    PipelineException,
    QuantumWalkException,
)
from ucpg_search.outputs import (
    RunManifest,
    dumps_json,
    frame_to_csv,
    write_csv,
    write_json,
    write_manifest,
)
from ucpg_search.settings import DEFAULT_SAMPLES, GAMMA_GRID_POINTS, log_directory, log_level
from ucpg_search.special_cases import SpecialCase, verify_case

EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
USAGE_EXCEPTIONS = (ConfigurationException, DomainException, CapacityException, FitException)


class PrettyLogger(logging.Logger):
    """
    Custom logger class that formats log arguments in a pretty way.
    """

    def _log(
        self,
        level,
        msg,
        args,
        exc_info=None,
        extra=None,
        stack_info=False,
        stacklevel=1,
    ):
        if args:
            msg = msg % tuple(_pretty(a) for a in args)
        super()._log(level, msg, (), exc_info, extra, stack_info)


def _pretty(value):
    if isinstance(value, np.ndarray):
        return np.array2string(value, precision=12)
    if isinstance(value, (dict, list, tuple)):
        return pprint.pformat(value)
    return value


logging.setLoggerClass(PrettyLogger)
logger = logging.getLogger("qwalk")


def configure_logging(verbose: bool):
    """
    Configure logging to stderr, or to qwalk.log when QWALK_LOG_DIRECTORY_PATH is set.
    """
    level = logging.INFO if verbose else getattr(logging, log_level(), logging.WARNING)
    directory = log_directory()
    destination = {}
    if directory:
        os.makedirs(directory, exist_ok=True)
        destination = {"filename": os.path.join(directory, "qwalk.log"), "filemode": "a"}
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        force=True,
        **destination,
    )


def exit_code_for(error: QuantumWalkException) -> int:
    """Map a toolkit error, or the cause of a pipeline error, to the process exit code."""
    cause = error.__cause__ if isinstance(error, PipelineException) else error
    if isinstance(error, USAGE_EXCEPTIONS) or isinstance(cause, USAGE_EXCEPTIONS):
        return EXIT_USAGE
    return EXIT_VERIFICATION_FAILED


def handle_errors(command):
    """
    Turn toolkit errors into a stage-labelled message on stderr and the exit-code contract.
    """

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except QuantumWalkException as e:
            logger.error("%s failed: %s", command.__name__, e)
            click.echo(f"Error: {e}", err=True)
            sys.exit(exit_code_for(e))

    return wrapper


def config_options(command):
    command = click.option("--m0", "m0", type=int, required=True, help="Size of V0.")(command)
    command = click.option("--p", "p_parts", type=int, required=True, help="Partitions P.")(
        command
    )
    command = click.option("--n", "n_total", type=int, required=True, help="Vertices N.")(
        command
    )
    return command


def gamma_fields(gamma):
    if gamma is None:
        return {"gamma_mode": "optimal", "gamma": None}
    return {"gamma_mode": "explicit", "gamma": gamma}


def finish_outputs(
    command: str, params: dict, directory: str, outputs, gamma=None, tolerances=None
):
    manifest = RunManifest(
        command=command,
        params=params,
        tolerances=tolerances or {},
        outputs=[os.path.basename(path) for path in outputs],
        **gamma_fields(gamma),
    )
    write_manifest(directory, manifest)


@click.group()
@click.option("--verbose", is_flag=True, help="Log progress at INFO level.")
@click.version_option(__version__)
@click.pass_context
def cli(ctx, verbose):
    """
    Continuous-time quantum-walk search on uniform complete P-partite graphs.
    """
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    configure_logging(verbose)


@cli.command()
@config_options
@click.option("--format", "output_format", type=click.Choice(["json", "csv"]), default="json")
@click.option("--out", type=click.Path(dir_okay=False), help="Write to this file instead.")
@handle_errors
def reduce(n_total, p_parts, m0, output_format, out):
    """
    Print H_ra, kappa, beta, lambda, gamma_opt, delta and the T_run / P_O predictions.
    """
    payload = reduce_payload(n_total, p_parts, m0)
    logger.info("H_ra for N=%s: %s", n_total, np.array(payload["h_ra"]))
    if output_format == "json":
        text = dumps_json(payload)
    else:
        text = frame_to_csv(payload_to_frame(payload))
    if out is None:
        click.echo(text, nl=False)
        return
    if output_format == "json":
        write_json(out, payload)
    else:
        write_csv(out, payload_to_frame(payload))
    params = {"n": n_total, "p": p_parts, "m0": m0, "format": output_format}
    finish_outputs("reduce", params, os.path.dirname(os.path.abspath(out)), [out])


@cli.command()
@config_options
@click.option("--gamma", type=float, default=None, help="Coupling factor, gamma_opt if unset.")
@click.option("--points", type=int, default=GAMMA_GRID_POINTS, show_default=True)
@click.option("--out", type=click.Path(file_okay=False), help="Directory for JSON and CSV.")
@handle_errors
def analyze(n_total, p_parts, m0, gamma, points, out):
    """
    Print the spectral data and scan the lowest gap over [0.5, 1.5] gamma_opt.
    """
    payload, profile = analyze_payload(n_total, p_parts, m0, gamma=gamma, points=points)
    if out is None:
        click.echo(dumps_json(payload), nl=False)
        return
    outputs = [write_json(os.path.join(out, "spectral.json"), payload)]
    if profile is not None:
        outputs.append(write_csv(os.path.join(out, "gap_profile.csv"), profile))
    params = {"n": n_total, "p": p_parts, "m0": m0, "points": points}
    finish_outputs("analyze", params, out, outputs, gamma=gamma)
    click.echo(dumps_json({"outputs": outputs}), nl=False)


@cli.command()
@config_options
@click.option("--gamma", type=float, default=None, help="Coupling factor, gamma_opt if unset.")
@click.option("--t-max", "t_max", type=float, default=None, help="Window end, 3 T_run if unset.")
@click.option("--samples", type=click.IntRange(min=1), default=DEFAULT_SAMPLES, show_default=True)
@click.option(
    "--space",
    type=click.Choice([Space.REDUCED.value, Space.FULL.value, BOTH]),
    default=Space.REDUCED.value,
    show_default=True,
)
@click.option("--out", type=click.Path(file_okay=False), default=".", show_default=True)
@handle_errors
def evolve(n_total, p_parts, m0, gamma, t_max, samples, space, out):
    """
    Write p_success(t) per space as CSV with columns t,p_success.
    """
    series, deviation = evolve_config(
        n_total, p_parts, m0, gamma=gamma, t_max=t_max, samples=samples, space=space
    )
    outputs = [
        write_csv(os.path.join(out, f"p_success_{name}.csv"), item.to_frame())
        for name, item in series.items()
    ]
    params = {
        "n": n_total,
        "p": p_parts,
        "m0": m0,
        "t_max": t_max,
        "samples": samples,
        "space": space,
    }
    finish_outputs("evolve", params, out, outputs, gamma=gamma)
    click.echo(dumps_json({"outputs": outputs, "max_deviation": deviation}), nl=False)


def parse_n_list(value: str):
    try:
        return [int(item) for item in value.split(",") if item.strip()]
    except ValueError as e:
        raise ConfigurationException(f"--n-list must be comma-separated integers: {value}") from e


@cli.command()
@click.option(
    "--case",
    "case",
    type=click.Choice([case.value for case in SweepCase]),
    default=SweepCase.COMPLETE.value,
    show_default=True,
)
@click.option("--n-list", "n_list", required=True, help="Comma-separated sizes, e.g. 256,1024.")
@click.option("--alpha", type=float, default=None, help="Share of V0 for bipartite/custom.")
@click.option("--p", "p_parts", type=int, default=None, help="Partitions P for custom.")
@click.option("--samples", type=click.IntRange(min=3), default=DEFAULT_SAMPLES, show_default=True)
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--out", type=click.Path(file_okay=False), default=".", show_default=True)
@click.pass_context
@handle_errors
def sweep(ctx, case, n_list, alpha, p_parts, samples, jobs, out):
    """
    Measure t_peak and p_peak per N in reduced space and fit log t_peak against log N.
    """
    sizes = parse_n_list(n_list)
    if len(set(sizes)) < MIN_FIT_POINTS:
        raise FitException(
            f"A scaling fit needs at least {MIN_FIT_POINTS} distinct N values, got {sizes}"
        )
    configs = [case_config(case, n, alpha=alpha, p_parts=p_parts) for n in sizes]
    rows = run_sweep(configs, jobs=jobs, samples=samples, progress=ctx.obj["verbose"])
    fit = fit_scaling(rows, case=case)
    outputs = [
        write_csv(os.path.join(out, "sweep.csv"), rows_to_frame(rows)),
        write_json(os.path.join(out, "fit.json"), fit),
    ]
    params = {
        "case": case,
        "n_list": sizes,
        "alpha": alpha,
        "p": p_parts,
        "samples": samples,
        "jobs": jobs,
    }
    finish_outputs("sweep", params, out, outputs)
    click.echo(dumps_json(fit), nl=False)


@cli.command()
@click.option(
    "--grid-max-n", "grid_max_n", type=int, default=DEFAULT_GRID_MAX_N, show_default=True
)
@click.option("--tol", type=float, default=None, help="One tolerance overriding all checks.")
@click.option("--out", type=click.Path(file_okay=False), default=None, help="Bundle directory.")
@click.pass_context
@handle_errors
def verify(ctx, grid_max_n, tol, out):
    """
    Run the invariant suite and print the certificate bundle; exit 1 on any failure.
    """

    def progress(configs):
        return tqdm(configs, desc="verify", disable=not ctx.obj["verbose"])

    report = run_verify(grid_max_n=grid_max_n, tol=tol, progress=progress)
    if out is not None:
        path = write_json(os.path.join(out, "verify_report.json"), report)
        finish_outputs(
            "verify",
            {"grid_max_n": grid_max_n, "tol": tol},
            out,
            [path],
            tolerances=Tolerances.uniform(tol).model_dump(),
        )
    click.echo(dumps_json(report), nl=False)
    logger.info("Verify summary: %s", summarize(report))
    if not report.passed:
        click.echo(f"Failing checks: {', '.join(report.failing)}", err=True)
        sys.exit(EXIT_VERIFICATION_FAILED)


@cli.command()
@click.option("--kind", type=click.Choice([kind.value for kind in SpecialCase]), required=True)
@click.option("--n-min", "n_min", type=click.IntRange(min=2), default=3, show_default=True)
@click.option("--n-max", "n_max", type=int, default=64, show_default=True)
@click.option("--no-hierarchy", is_flag=True, help="Skip the pipeline run per config.")
@handle_errors
def special(kind, n_min, n_max, no_hierarchy):
    """
    Check the reduced Hamiltonian of a special case against its displayed form.
    """
    report = verify_case(kind, range(n_min, n_max + 1), check_hierarchy=not no_hierarchy)
    click.echo(dumps_json(report), nl=False)
    if not report.passed:
        sys.exit(EXIT_VERIFICATION_FAILED)


if __name__ == "__main__":
    cli()  # pylint: disable=no-value-for-parameter
