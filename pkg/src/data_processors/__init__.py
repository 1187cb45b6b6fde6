"""Artifact writers: CSV tables and matrices, JSON reports, PPM heatmaps, sequence files."""

from typing import Dict, Type

from src.data_processors.base_processor import BaseProcessor
from src.data_processors.csv_exporter import CSVExporter, read_matrix, read_table
from src.data_processors.heatmap import HeatmapExporter, emit_heatmap
from src.data_processors.json_exporter import JSONExporter
from src.data_processors.manifest import RunManifest
from src.data_processors.sequence_io import SequenceExporter, read_sequence

# Register processors for easy access
PROCESSORS: Dict[str, Type[BaseProcessor]] = {
    "csv": CSVExporter,
    "json": JSONExporter,
    "ppm": HeatmapExporter,
    "sequence": SequenceExporter,
}


def get_processor(name: str, **kwargs) -> BaseProcessor:
    """
    Instantiate a registered processor.

    Args:
        name (str): Processor key
        **kwargs: Arguments to pass to the processor

    Returns:
        BaseProcessor: Processor instance

    Raises:
        ValueError: If the processor is not registered
    """
    if name not in PROCESSORS:
        raise ValueError(
            f"Processor '{name}' not found. Available processors: {', '.join(PROCESSORS.keys())}"
        )
    return PROCESSORS[name](**kwargs)


__all__ = [
    "PROCESSORS",
    "BaseProcessor",
    "CSVExporter",
    "HeatmapExporter",
    "JSONExporter",
    "RunManifest",
    "SequenceExporter",
    "emit_heatmap",
    "get_processor",
    "read_matrix",
    "read_sequence",
    "read_table",
]
