"""JTA, Hong-Ou-Mandel trace, Schmidt decomposition and grid cuts of a JSA."""

from dataclasses import dataclass
from typing import Dict

import numpy as np

from src.biphoton.jsa import JSAGrid
from src.utils.exceptions import GridRangeError
from src.utils.helpers import chunk_slices, count_extrema
from src.utils.logging import get_logger

logger = get_logger()


@dataclass(frozen=True)
class JTAGrid:
    """Joint temporal amplitude g(t_s, t_i); rows signal, columns idler, times in fs."""

    times: np.ndarray
    amplitude: np.ndarray

    @property
    def d_time(self) -> float:
        return float(self.times[1] - self.times[0])


def jta_from_jsa(jsa: JSAGrid) -> JTAGrid:
    """
    2D inverse FFT of the JSA with the frequency origin at the grid centre.

    g = Δω²·M²·IFFT2(f)/(2π) on t = (i − M/2)·Δt, Δt = 2π/(M·Δω), which keeps
    Σ|g|²Δt² = Σ|f|²Δω².

    Args:
        jsa (JSAGrid): Normalized JSA

    Returns:
        JTAGrid: Time-domain amplitude
    """
    grid = jsa.grid
    m = grid.size
    spectrum = np.fft.ifftshift(jsa.amplitude)
    amplitude = np.fft.fftshift(np.fft.ifft2(spectrum)) * (grid.d_omega**2 * m**2 / (2.0 * np.pi))
    return JTAGrid(times=grid.times, amplitude=amplitude)


def hom_scan(jsa: JSAGrid, taus: np.ndarray, chunk: int = 256) -> np.ndarray:
    """
    Coincidence probability p(τ) = ½ − ½·ΣΣ|f|²cos((ω_s − ω_i)τ)Δω².

    The cosine is split as cos·cos + sin·sin so each block of delays costs two
    matrix products.

    Args:
        jsa (JSAGrid): Normalized JSA
        taus (np.ndarray): Delays in fs

    Returns:
        np.ndarray: p(τ)
    """
    taus = np.asarray(taus, dtype=float)
    weights = jsa.intensity * jsa.grid.d_omega**2
    offsets = jsa.grid.omegas - jsa.grid.center_omega
    overlap = np.empty(taus.size)
    for part in chunk_slices(taus.size, chunk):
        phase = np.outer(taus[part], offsets)
        cos, sin = np.cos(phase), np.sin(phase)
        overlap[part] = np.sum((cos @ weights) * cos, axis=1) + np.sum((sin @ weights) * sin, axis=1)
    return 0.5 - 0.5 * overlap


def hom_features(taus: np.ndarray, p: np.ndarray, rel_height: float = 0.05) -> Dict[str, float]:
    """
    Summary of a HOM trace.

    Args:
        taus (np.ndarray): Delays in fs
        p (np.ndarray): Coincidence probability
        rel_height (float): Fringe threshold relative to the largest excursion

    Returns:
        Dict[str, float]: dip (p at τ = 0), visibility, fringe_count, edge_value
    """
    centre = int(np.argmin(np.abs(taus)))
    edge = float(0.5 * (p[0] + p[-1]))
    return {
        "dip": float(p[centre]),
        "visibility": float((edge - p[centre]) / edge) if edge > 0 else 0.0,
        "fringe_count": float(count_extrema(np.asarray(p) - 0.5, rel_height)),
        "edge_value": edge,
    }


@dataclass(frozen=True)
class SchmidtResult:
    """Singular values, Schmidt weights p_i and Schmidt number K = 1/Σp_i²."""

    singular_values: np.ndarray
    weights: np.ndarray
    schmidt_number: float

    def top(self, count: int = 16) -> np.ndarray:
        return self.weights[:count]


def schmidt_decomposition(jsa: JSAGrid) -> SchmidtResult:
    """
    Schmidt decomposition of the JSA by singular value decomposition.

    Args:
        jsa (JSAGrid): Normalized JSA

    Returns:
        SchmidtResult: Singular values (descending), weights and K
    """
    singular = np.linalg.svd(jsa.amplitude * jsa.grid.d_omega, compute_uv=False)
    power = singular**2
    weights = power / power.sum()
    number = float(1.0 / np.sum(weights**2))
    logger.debug(f"Schmidt number {number:.4f} on a {jsa.grid.size}x{jsa.grid.size} grid")
    return SchmidtResult(singular_values=singular, weights=weights, schmidt_number=number)


def antidiagonal_profile(data: np.ndarray, offset: int = 0) -> np.ndarray:
    """
    Samples along ω_s − ω_i at fixed ω_s + ω_i.

    Cells (i, j) with i + j = M + offset, ordered by increasing row i; offset 0
    passes through the grid centre (M/2, M/2).

    Args:
        data (np.ndarray): Square M×M array
        offset (int): Index offset of the cut along the sum direction

    Returns:
        np.ndarray: 1D profile

    Raises:
        GridRangeError: For non-square data or a cut outside the grid
    """
    data = np.asarray(data)
    if data.ndim != 2 or data.shape[0] != data.shape[1]:
        raise GridRangeError(f"antidiagonal profile needs a square grid, got shape {data.shape}")
    m = data.shape[0]
    if not -m <= offset <= m - 2:
        raise GridRangeError(f"offset {offset} outside [{-m}, {m - 2}] for a {m}x{m} grid")
    return np.diagonal(np.fliplr(data), offset=-1 - offset).copy()
