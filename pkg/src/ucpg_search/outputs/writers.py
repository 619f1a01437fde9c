"""
This module contains the CSV/JSON writers and the run manifest.

All files are written atomically: the payload goes to a temporary file in the destination
directory, which then replaces the target.
"""
import json
import logging
import os
import tempfile
from typing import Any, Dict, List, Optional

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from ucpg_search import __version__

MANIFEST_FILE_NAME = "run_manifest.json"


class RunManifest(BaseModel):
    """
    Represents everything needed to reproduce a run.

    Attributes:
        command (str): CLI command name.
        params (Dict[str, Any]): Command parameters as given.
        gamma_mode (str): "optimal" or "explicit".
        gamma (Optional[float]): The explicit coupling factor, if any.
        tolerances (Dict[str, float]): Tolerances the run was judged with.
        outputs (List[str]): Files the run produced.
        tool_version (str): Package version.
    """

    model_config = ConfigDict(frozen=True)

    command: str
    params: Dict[str, Any]
    gamma_mode: str = "optimal"
    gamma: Optional[float] = None
    tolerances: Dict[str, float] = Field(default_factory=dict)
    outputs: List[str] = Field(default_factory=list)
    tool_version: str = __version__


def dumps_json(payload: Any) -> str:
    """
    Serialize a payload with stable key order.
    """
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json")
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def frame_to_csv(frame: pd.DataFrame) -> str:
    # pandas writes floats as the shortest round-trip decimal
    return frame.to_csv(index=False, lineterminator="\n")


def write_atomic(path: str, text: str) -> str:
    """
    Write text to a file through a temporary file and a rename.

    Args:
        path (str): Destination path; its directory is created on demand.
        text (str): File content.

    Returns:
        str: The destination path.
    """
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    handle, tmp_path = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(handle, "w", encoding="utf-8", newline="") as tmp_file:
            tmp_file.write(text)
        os.replace(tmp_path, path)
    except OSError:
        logging.error("Failed to write %s", path)
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise
    logging.info("Wrote %s", path)
    return path


def write_json(path: str, payload: Any) -> str:
    return write_atomic(path, dumps_json(payload))


def write_csv(path: str, frame: pd.DataFrame) -> str:
    return write_atomic(path, frame_to_csv(frame))


def write_manifest(directory: str, manifest: RunManifest) -> str:
    """
    Write run_manifest.json next to the outputs of a run.
    """
    return write_json(os.path.join(directory, MANIFEST_FILE_NAME), manifest)
