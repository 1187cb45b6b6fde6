"""JSON exporter for scalar reports."""

import json
from typing import Any, Dict

import numpy as np

from src.data_processors.base_processor import BaseProcessor


def _to_builtin(value: Any) -> Any:
    """Convert numpy scalars and arrays to JSON-serializable builtins."""
    if isinstance(value, dict):
        return {str(k): _to_builtin(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_to_builtin(v) for v in value]
    if isinstance(value, np.ndarray):
        return _to_builtin(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    return value


class JSONExporter(BaseProcessor):
    """Export a report dictionary to a pretty-printed JSON file with sorted keys."""

    extension = "json"

    def process(self, data: Dict[str, Any], filename: str) -> str:
        self.logger.info(f"Writing report to JSON file: {self.get_output_path(filename)}")
        return self.write_artifact(filename, json.dumps(_to_builtin(data), indent=2, sort_keys=True) + "\n")
