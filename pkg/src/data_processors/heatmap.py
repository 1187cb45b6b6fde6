"""Binary PPM (P6) heatmaps with a fixed black-blue-red-yellow-white colormap."""

from pathlib import Path

import numpy as np

from src.data_processors.base_processor import BaseProcessor
from src.utils.exceptions import HeatmapError

# colour stops at t = 0, 1/4, 1/2, 3/4, 1
COLORMAP_STOPS = np.array(
    [
        [0, 0, 0],
        [0, 0, 255],
        [255, 0, 0],
        [255, 255, 0],
        [255, 255, 255],
    ],
    dtype=float,
)


def colorize(matrix: np.ndarray) -> np.ndarray:
    """
    Map a finite real matrix to RGB bytes.

    Values are scaled linearly from [min, max] to t ∈ [0, 1] (a constant matrix maps
    to t = 0) and interpolated between the colour stops; channels round half up.

    Args:
        matrix (np.ndarray): Real H×W values

    Returns:
        np.ndarray: uint8 array of shape (H, W, 3)

    Raises:
        HeatmapError: If any value is NaN or infinite
    """
    values = np.asarray(matrix, dtype=float)
    if values.ndim != 2:
        raise ValueError(f"heatmap needs a 2D matrix, got shape {values.shape}")
    bad = np.argwhere(~np.isfinite(values))
    if bad.size:
        raise HeatmapError(bad)

    low, high = values.min(), values.max()
    t = (values - low) / (high - low) if high > low else np.zeros_like(values)

    scaled = t * (len(COLORMAP_STOPS) - 1)
    segment = np.minimum(np.floor(scaled).astype(int), len(COLORMAP_STOPS) - 2)
    frac = (scaled - segment)[..., None]
    rgb = COLORMAP_STOPS[segment] + (COLORMAP_STOPS[segment + 1] - COLORMAP_STOPS[segment]) * frac
    return np.floor(rgb + 0.5).astype(np.uint8)


def encode_ppm(matrix: np.ndarray) -> bytes:
    """P6 bytes of a matrix, row 0 at the top."""
    rgb = colorize(matrix)
    height, width = rgb.shape[:2]
    return f"P6\n{width} {height}\n255\n".encode("ascii") + rgb.tobytes()


class HeatmapExporter(BaseProcessor):
    """Write heatmaps of |amplitude| or intensity matrices."""

    extension = "ppm"

    def process(self, data: np.ndarray, filename: str) -> str:
        self.logger.info(f"Writing {np.shape(data)} heatmap to {self.get_output_path(filename)}")
        return self.write_artifact(filename, encode_ppm(data))


def emit_heatmap(matrix: np.ndarray, path: str) -> str:
    """
    Write a matrix as a binary PPM image outside a run's output directory.

    Args:
        matrix (np.ndarray): Finite real matrix
        path (str): Destination file; ``.ppm`` is appended when missing

    Returns:
        str: Path of the written image
    """
    target = Path(path)
    return HeatmapExporter(output_dir=str(target.parent)).process(matrix, target.name)
