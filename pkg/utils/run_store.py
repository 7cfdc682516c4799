"""
Run artifact store

Writes command payloads and their provenance manifests.
"""

import json
import sys
from pathlib import Path
from typing import Optional, TextIO, Union

import structlog

from utils.models import RunManifest

logger = structlog.get_logger()


class RunStore:
    """
    Persists payloads to disk (or stdout) together with their RunManifest.
    """

    def __init__(self, manifest_suffix: str = ".manifest.json", stdout: Optional[TextIO] = None):
        """
        Initialize the run store.

        Args:
            manifest_suffix: Appended to the payload path to name its manifest
            stdout: Stream for payloads without an output path (sys.stdout when None)
        """
        self.manifest_suffix = manifest_suffix
        self.stdout = stdout

        logger.debug("run_store_initialized", manifest_suffix=manifest_suffix)

    def manifest_path(self, out: Union[str, Path]) -> Path:
        out = Path(out)
        return out.with_name(out.name + self.manifest_suffix)

    def save(self, payload: str, manifest: RunManifest, out: Optional[Union[str, Path]] = None) -> Optional[Path]:
        """
        Write a payload and its manifest.

        Args:
            payload: Rendered CSV or JSON text
            manifest: Provenance record for the payload
            out: Output file; the payload goes to stdout and the manifest to the log when None

        Returns:
            Path of the manifest file, or None when writing to stdout
        """
        if out is None:
            (self.stdout or sys.stdout).write(payload)
            logger.info("run_manifest", **manifest.model_dump(mode="json"))
            return None

        out = Path(out)
        out.parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w", encoding="utf-8", newline="") as f:
            f.write(payload)

        manifest_file = self.manifest_path(out)
        with open(manifest_file, "w", encoding="utf-8") as f:
            json.dump(manifest.model_dump(mode="json"), f, indent=2, sort_keys=True)
            f.write("\n")

        logger.info("run_saved", out=str(out), manifest=str(manifest_file))
        return manifest_file

    def load_manifest(self, out: Union[str, Path]) -> Optional[RunManifest]:
        """Load the manifest written next to an output file, if any."""
        manifest_file = self.manifest_path(out)
        if not manifest_file.exists():
            return None

        with open(manifest_file, "r", encoding="utf-8") as f:
            manifest = RunManifest(**json.load(f))

        logger.debug("run_manifest_loaded", path=str(manifest_file))
        return manifest
