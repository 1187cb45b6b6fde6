"""Artifact writers share one output directory and replace files atomically."""

import os
import tempfile
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Optional, Union

from src.utils.config import ConfigManager, get_config
from src.utils.logging import get_logger


class BaseProcessor(ABC):
    """Base class of every artifact writer.

    Subclasses serialize their data and hand the payload to ``write_artifact``;
    a reader of the output directory sees either the previous file or the
    complete new one.
    """

    # default file extension of the artifacts this processor writes
    extension: str = ""

    def __init__(
        self,
        config: Optional[ConfigManager] = None,
        output_dir: Optional[str] = None,
        encoding: str = "utf-8",
    ):
        """
        Args:
            config (ConfigManager, optional): Configuration manager
            output_dir (str, optional): Output directory; defaults to
                OUTPUT_DIRECTORY or ``output.directory`` of the config
            encoding (str): Encoding of text payloads
        """
        self.logger = get_logger()
        self.config = config or get_config()
        self.encoding = encoding
        self.output_dir = Path(output_dir or self.config.output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)

    @abstractmethod
    def process(self, data: Any, filename: str) -> str:
        """
        Write one artifact.

        Args:
            data (Any): Content to write
            filename (str): File name inside the output directory

        Returns:
            str: Path to the written file
        """

    def get_output_path(self, filename: str) -> str:
        """Path of ``filename`` inside the output directory, with the default extension added if missing."""
        if self.extension and not filename.lower().endswith(f".{self.extension}"):
            filename = f"{filename}.{self.extension}"
        return str(self.output_dir / filename)

    def write_artifact(self, filename: str, payload: Union[str, bytes]) -> str:
        """
        Write a payload through a temporary file in the output directory, then rename it into place.

        Args:
            filename (str): File name inside the output directory
            payload (str | bytes): Text is encoded with ``self.encoding``

        Returns:
            str: Path to the written file
        """
        output_path = self.get_output_path(filename)
        data = payload.encode(self.encoding) if isinstance(payload, str) else payload

        fd, tmp_path = tempfile.mkstemp(dir=self.output_dir, prefix=".partial-")
        try:
            with os.fdopen(fd, "wb") as f:
                f.write(data)
            os.replace(tmp_path, output_path)
        except BaseException:
            Path(tmp_path).unlink(missing_ok=True)
            raise
        return output_path
