"""
This module contains the runtime settings and numerical tolerances of the toolkit.

Environment variables:
- QWALK_DENSE_GUARD: largest N for which dense N x N matrices are built (default 4096).
- QWALK_LOG_DIRECTORY_PATH: directory for the log file, logs go to stderr when unset.
- QWALK_LOG_LEVEL: logging level name (default WARNING).
"""
import os

DEFAULT_DENSE_GUARD = 4096

ORTHONORMALITY_TOL = 1e-12
CLOSURE_TOL = 1e-10
INVARIANCE_TOL = 1e-10
PROJECTOR_TOL = 1e-9
DYNAMICS_TOL = 1e-9
EIGENVALUE_TOL = 1e-9
DEGENERACY_TOL = 1e-12
SYMMETRY_TOL = 1e-12
EIGENVECTOR_RESIDUAL_TOL = 1e-11
OVERLAP_FORMULA_TOL = 1e-10
BETA_PRODUCT_TOL = 1e-14
HERMITIAN_TOL = 1e-10
NORM_TOL = 1e-10
GAP_REL_TOL = 0.05

# Below this size of the marked partition the m0 >> 1 assumption of the split is weak.
SMALL_M0_THRESHOLD = 10

DEFAULT_SAMPLES = 400
DEFAULT_WINDOW_FACTOR = 3.0
GAMMA_GRID_POINTS = 101


def dense_guard() -> int:
    """
    Get the largest N for which dense full-space matrices may be built.

    Returns:
        int: The guard from QWALK_DENSE_GUARD, or 4096 when unset.
    """
    return int(os.getenv("QWALK_DENSE_GUARD", str(DEFAULT_DENSE_GUARD)))


def log_directory():
    """
    Get the directory the CLI writes its log file to.

    Returns:
        str: The directory path, or None to log to stderr.
    """
    return os.getenv("QWALK_LOG_DIRECTORY_PATH")


def log_level() -> str:
    """
    Get the logging level name.

    Returns:
        str: The level name from QWALK_LOG_LEVEL, WARNING when unset.
    """
    return os.getenv("QWALK_LOG_LEVEL", "WARNING").upper()
