"""
This package writes command payloads as CSV/JSON files and run manifests.
"""
from .writers import (
    MANIFEST_FILE_NAME,
    RunManifest,
    dumps_json,
    frame_to_csv,
    write_atomic,
    write_csv,
    write_json,
    write_manifest,
)

__all__ = [
    "MANIFEST_FILE_NAME",
    "RunManifest",
    "dumps_json",
    "frame_to_csv",
    "write_atomic",
    "write_csv",
    "write_json",
    "write_manifest",
]
