"""Helper utilities shared by the numerical modules and the exporters."""

import hashlib
import os
from pathlib import Path
from typing import Iterator, Union

import numpy as np
from scipy.signal import find_peaks

from src.utils.logging import get_logger

logger = get_logger()


def sha256_file(path: Union[str, Path], chunk_size: int = 1 << 20) -> str:
    """
    Compute the SHA-256 checksum of a file.

    Args:
        path (str | Path): File to hash
        chunk_size (int): Read size in bytes

    Returns:
        str: Hex digest
    """
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for block in iter(lambda: f.read(chunk_size), b""):
            digest.update(block)
    return digest.hexdigest()


def is_power_of_two(value: int) -> bool:
    return value > 0 and value & (value - 1) == 0


def thread_limit(default: int = 0) -> int:
    """
    Number of worker threads allowed by QPM_THREADS.

    Args:
        default (int): Used when QPM_THREADS is unset; 0 means ``os.cpu_count()``

    Returns:
        int: At least 1
    """
    raw = os.getenv("QPM_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            logger.warning(f"Ignoring malformed QPM_THREADS={raw!r}")
    return max(1, default or os.cpu_count() or 1)


def chunk_slices(length: int, chunk: int) -> Iterator[slice]:
    """Yield consecutive slices of at most ``chunk`` items covering ``range(length)``."""
    for start in range(0, length, chunk):
        yield slice(start, min(start + chunk, length))


def count_peaks(profile: np.ndarray, rel_height: float = 0.05) -> int:
    """
    Count local maxima of a 1D profile above a fraction of its maximum.

    Args:
        profile (np.ndarray): Non-negative samples (|amplitude| or intensity)
        rel_height (float): Threshold as a fraction of the global maximum

    Returns:
        int: Number of peaks
    """
    values = np.asarray(profile, dtype=float)
    peak = values.max() if values.size else 0.0
    if peak <= 0:
        return 0
    # pad so maxima on the edges are counted
    padded = np.concatenate(([0.0], values, [0.0]))
    indices, _ = find_peaks(padded, height=rel_height * peak)
    return int(indices.size)


def count_extrema(profile: np.ndarray, rel_height: float = 0.05) -> int:
    """Count maxima of ``|profile|`` above the threshold (lobes of either sign)."""
    return count_peaks(np.abs(np.asarray(profile)), rel_height)

