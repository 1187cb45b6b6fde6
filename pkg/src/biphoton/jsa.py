"""Joint spectral amplitude: PMF × pump envelope on a wavelength grid."""

from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from src.biphoton.spectral import PumpSpec, SpectralGrid, pump_envelope
from src.dispersion.base_model import DispersionModel, Polarization
from src.dispersion.phase_matching import TYPE_II, phase_mismatch
from src.utils.exceptions import ParameterError
from src.utils.logging import get_logger

logger = get_logger()

PMFCallable = Callable[[np.ndarray], np.ndarray]

# border share of |f|² above which the grid span is reported as too narrow
EDGE_WARNING_FRACTION = 1e-3


@dataclass(frozen=True)
class JSAGrid:
    """Complex f(ω_s, ω_i) sampled on a SpectralGrid; rows are signal, columns idler.

    When ``normalized`` is set, Σ|f|²·Δω_s·Δω_i = 1 with Δω taken at the grid centre.
    """

    grid: SpectralGrid
    amplitude: np.ndarray
    normalized: bool = True

    @property
    def intensity(self) -> np.ndarray:
        return np.abs(self.amplitude) ** 2

    @property
    def norm(self) -> float:
        return float(np.sum(self.intensity) * self.grid.d_omega**2)

    def normalize(self) -> "JSAGrid":
        norm = self.norm
        if not norm > 0:
            raise ParameterError("JSA is identically zero on the grid; nothing to normalize")
        return JSAGrid(self.grid, self.amplitude / np.sqrt(norm), True)


def mismatch_grid(
    model: DispersionModel,
    grid: SpectralGrid,
    polarizations: Tuple[Polarization, Polarization, Polarization] = TYPE_II,
) -> np.ndarray:
    """
    Wavevector mismatch k = k_p − k_s − k_i (no grating term) over the grid.

    The pump wavelength of each cell follows from energy conservation,
    1/λ_p = 1/λ_s + 1/λ_i.

    Returns:
        np.ndarray: M×M array in rad/nm
    """
    signal = grid.signal_nm[:, None]
    idler = grid.idler_nm[None, :]
    pump = 1.0 / (1.0 / signal + 1.0 / idler)
    return phase_mismatch(model, pump, signal, idler, polarizations)


def assemble_jsa(
    pmf: PMFCallable,
    pump: PumpSpec,
    grid: SpectralGrid,
    model: DispersionModel,
    mismatch: Optional[np.ndarray] = None,
    normalize: bool = True,
) -> JSAGrid:
    """
    JSA f = φ(k(λ_s, λ_i))·α(ω_s + ω_i), L2-normalized.

    Args:
        pmf (callable): Achieved PMF or analytic target PMF of k (rad/nm)
        pump (PumpSpec): Pump envelope parameters
        grid (SpectralGrid): Wavelength grid
        model (DispersionModel): Index provider for k(λ_s, λ_i)
        mismatch (np.ndarray, optional): Precomputed ``mismatch_grid`` output
        normalize (bool): Scale to unit norm

    Returns:
        JSAGrid: Joint spectral amplitude

    Raises:
        CoverageError: If a sampled PMF does not cover the grid's k range
    """
    k = mismatch if mismatch is not None else mismatch_grid(model, grid)
    phi = np.asarray(pmf(k))
    alpha = pump_envelope(pump, grid.omegas[:, None] + grid.omegas[None, :])
    jsa = JSAGrid(grid, (phi * alpha).astype(complex), normalized=False)
    return jsa.normalize() if normalize else jsa


def jsa_centroid(jsa: JSAGrid) -> Tuple[float, float]:
    """|f|²-weighted mean signal and idler wavelengths, nm."""
    weights = jsa.intensity
    total = weights.sum()
    signal = float(np.sum(weights.sum(axis=1) * jsa.grid.signal_nm) / total)
    idler = float(np.sum(weights.sum(axis=0) * jsa.grid.idler_nm) / total)
    return signal, idler


def edge_fraction(jsa: JSAGrid, border: int = 2) -> float:
    """Share of |f|² within ``border`` cells of the grid edge (span sufficiency check)."""
    weights = jsa.intensity
    inner = weights[border:-border, border:-border].sum()
    return float(1.0 - inner / weights.sum())


def check_span(jsa: JSAGrid) -> float:
    """Warn when the JSA reaches the grid border; returns the edge fraction."""
    share = edge_fraction(jsa)
    if share > EDGE_WARNING_FRACTION:
        logger.warning(
            f"{share:.2%} of the joint spectral intensity lies on the grid border; "
            f"increase grid.span_nm ({jsa.grid.span_nm:g} nm)"
        )
    return share


def covering_k_grid(mismatch: np.ndarray, points: int = 4096, margin: float = 0.01) -> np.ndarray:
    """
    Uniform k grid spanning a mismatch matrix, padded by ``margin`` of its range.

    Args:
        mismatch (np.ndarray): ``mismatch_grid`` output, rad/nm
        points (int): Number of samples
        margin (float): Relative padding on each side

    Returns:
        np.ndarray: Strictly increasing k values
    """
    low, high = float(np.min(mismatch)), float(np.max(mismatch))
    pad = margin * (high - low) or 1e-9 * abs(high)
    return np.linspace(low - pad, high + pad, points)
