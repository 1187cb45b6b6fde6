"""Run manifest: emitted artifacts with checksums, and the output-directory lock."""

import json
import os
from contextlib import contextmanager
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, Iterator, Optional

from src.data_processors.json_exporter import JSONExporter
from src.utils.exceptions import OutputLockedError
from src.utils.helpers import sha256_file
from src.utils.logging import get_logger

LOCK_NAME = ".qpm.lock"
MANIFEST_NAME = "manifest.json"


class RunManifest:
    """Artifacts written to one output directory.

    Entries of earlier runs in the same directory are kept and updated, so the
    manifest always lists every artifact present with its current checksum.

    Attributes:
        output_dir (Path): Output directory
        config_hash (str): SHA-256 of the config file, or None for defaults
        version (str): Toolkit version
    """

    def __init__(self, output_dir: str, config_path: Optional[str] = None, version: str = ""):
        self.logger = get_logger()
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)
        self.config_hash = sha256_file(config_path) if config_path else None
        self.version = version
        self.started = datetime.now(timezone.utc).isoformat(timespec="seconds")
        self.artifacts: Dict[str, str] = self._load_existing()

    @property
    def path(self) -> Path:
        return self.output_dir / MANIFEST_NAME

    def _load_existing(self) -> Dict[str, str]:
        if not self.path.exists():
            return {}
        try:
            with open(self.path, "r", encoding="utf-8") as f:
                entries = json.load(f).get("artifacts", [])
            return {entry["path"]: entry["sha256"] for entry in entries}
        except (ValueError, KeyError, TypeError) as e:
            self.logger.warning(f"Ignoring unreadable manifest {self.path}: {e}")
            return {}

    @contextmanager
    def lock(self) -> Iterator[None]:
        """
        Hold the output-directory lock for the duration of a run.

        Raises:
            OutputLockedError: If another run holds the lock
        """
        lock_path = self.output_dir / LOCK_NAME
        try:
            fd = os.open(lock_path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            raise OutputLockedError(f"output directory {self.output_dir} is locked by {lock_path}")
        try:
            os.write(fd, str(os.getpid()).encode("ascii"))
            os.close(fd)
            yield
        finally:
            lock_path.unlink(missing_ok=True)

    def record(self, path: str) -> str:
        """Add (or refresh) an artifact entry; returns the path."""
        relative = os.path.relpath(path, self.output_dir)
        self.artifacts[relative] = sha256_file(path)
        return path

    def verify(self) -> Dict[str, bool]:
        """Whether each listed artifact exists and matches its checksum."""
        return {
            name: (self.output_dir / name).exists() and sha256_file(self.output_dir / name) == digest
            for name, digest in self.artifacts.items()
        }

    def write(self) -> str:
        data = {
            "version": self.version,
            "config_sha256": self.config_hash,
            "started": self.started,
            "finished": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "artifacts": [
                {"path": name, "sha256": digest} for name, digest in sorted(self.artifacts.items())
            ],
        }
        # temporary file plus rename, like every other artifact
        JSONExporter(output_dir=str(self.output_dir)).process(data, MANIFEST_NAME)
        self.logger.info(f"Manifest lists {len(self.artifacts)} artifacts: {self.path}")
        return str(self.path)
