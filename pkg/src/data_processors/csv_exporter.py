"""CSV exporter for tables and axis-labelled matrices."""

from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from src.data_processors.base_processor import BaseProcessor
from src.utils.exceptions import ArtifactNotFoundError

TableLike = Union[pd.DataFrame, List[Dict[str, Any]], Dict[str, Sequence]]


class CSVExporter(BaseProcessor):
    """Export tables and matrices to CSV files.

    Floats are written with the shortest round-trip representation, so reloading
    with ``read_matrix``/``read_table`` gives bit-identical values.
    """

    extension = "csv"

    def process(self, data: TableLike, filename: str) -> str:
        """
        Write a table to CSV.

        Args:
            data (TableLike): DataFrame, list of records or dict of columns
            filename (str): File name inside the output directory

        Returns:
            str: Path to output CSV file
        """
        df = data if isinstance(data, pd.DataFrame) else pd.DataFrame(data)

        self.logger.info(f"Writing {len(df)} rows to CSV file: {self.get_output_path(filename)}")
        return self.write_artifact(filename, df.to_csv(index=False))

    def write_matrix(
        self,
        matrix: np.ndarray,
        row_axis: np.ndarray,
        col_axis: np.ndarray,
        filename: str,
        corner: str = "signal_nm/idler_nm",
    ) -> str:
        """
        Write a real matrix with its axes: the header row holds the column axis,
        the first column the row axis.

        Args:
            matrix (np.ndarray): Real M×N values
            row_axis (np.ndarray): M row coordinates
            col_axis (np.ndarray): N column coordinates
            filename (str): File name inside the output directory
            corner (str): Label of the top-left cell

        Returns:
            str: Path to output CSV file
        """
        matrix = np.asarray(matrix)
        if np.iscomplexobj(matrix):
            raise ValueError("write_matrix takes real data; export the modulus or a component")
        df = pd.DataFrame(matrix, index=pd.Index(row_axis, name=corner), columns=[repr(float(c)) for c in col_axis])

        self.logger.info(f"Writing {matrix.shape[0]}x{matrix.shape[1]} matrix to CSV file: {self.get_output_path(filename)}")
        return self.write_artifact(filename, df.to_csv())


def _check_exists(path: str) -> None:
    if not Path(path).exists():
        raise ArtifactNotFoundError(f"artifact not found: {path}")


def read_table(path: str) -> pd.DataFrame:
    """Reload a table written by ``CSVExporter.process``."""
    _check_exists(path)
    return pd.read_csv(path, float_precision="round_trip")


def read_matrix(path: str) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Reload a matrix written by ``CSVExporter.write_matrix``.

    Returns:
        Tuple[np.ndarray, np.ndarray, np.ndarray]: row axis, column axis, values
    """
    _check_exists(path)
    df = pd.read_csv(path, index_col=0, float_precision="round_trip")
    return (
        df.index.to_numpy(dtype=float),
        np.array([float(c) for c in df.columns]),
        df.to_numpy(dtype=float),
    )
