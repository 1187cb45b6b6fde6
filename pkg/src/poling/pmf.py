"""Phase-matching functions reconstructed from domain sequences."""

from dataclasses import dataclass
from typing import Callable, Optional, Tuple, Union

import numpy as np

from src.poling.domains import DomainSequence
from src.utils.exceptions import CoverageError, ExcludedPointError, GridRangeError
from src.utils.helpers import chunk_slices
from src.utils.logging import get_logger

logger = get_logger()

ArrayLike = Union[float, np.ndarray]

# |k·L_c| below which the removable singularity is replaced by its series
SERIES_THRESHOLD = 1e-8


def domain_step_contribution(j: ArrayLike, sign: ArrayLike, k: ArrayLike, domain_width: float) -> np.ndarray:
    """
    Integral of sign·exp(ikz) over domain j, z ∈ [(j−1)L_c, jL_c].

    Equals sign·i·exp(ijkL_c)(exp(−ikL_c) − 1)/k; the k → 0 limit is sign·L_c.

    Args:
        j (int | np.ndarray): Domain index, j ≥ 1
        sign (int | np.ndarray): Domain sign ±1
        k (float | np.ndarray): Wavevector in rad/nm
        domain_width (float): L_c in nm

    Returns:
        np.ndarray: Complex contribution in nm
    """
    j = np.asarray(j, dtype=float)
    if np.any(j < 1):
        raise ValueError("domain index j starts at 1")
    k = np.asarray(k, dtype=float)
    sign = np.asarray(sign, dtype=float)
    kl = k * domain_width
    small = np.abs(kl) < SERIES_THRESHOLD
    safe_k = np.where(small, 1.0, k)
    exact = 1j * np.exp(1j * j * kl) * (np.exp(-1j * kl) - 1.0) / safe_k
    series = domain_width * np.exp(1j * (j - 0.5) * kl) * (1.0 - kl**2 / 24.0)
    return sign * np.where(small, series, exact)


def field_amplitude_step(j: ArrayLike, sign: ArrayLike, k: ArrayLike, domain_width: float) -> np.ndarray:
    """
    Light-field amplitude added by domain j: sign·exp(ijkL_c)(exp(−ikL_c) − 1)/k.

    This is −i times ``domain_step_contribution``; at kL_c = π it is the real
    value −2·sign·(−1)^j/k.
    """
    return -1j * domain_step_contribution(j, sign, k, domain_width)


def accumulate_field_amplitude(signs: np.ndarray, k0: float, domain_width: float) -> np.ndarray:
    """Field amplitude A(j·L_c), j = 1..N, accumulated over uniform domains at k₀."""
    signs = np.asarray(signs, dtype=float)
    j = np.arange(1, signs.size + 1)
    return np.cumsum(field_amplitude_step(j, signs, k0, domain_width))


def _edge_weights(seq: DomainSequence) -> Tuple[np.ndarray, np.ndarray]:
    signs = seq.signs.astype(float)
    if seq.anchored:
        return np.concatenate((seq.domain_starts, seq.domain_ends)), np.concatenate((-signs, signs))
    padded = np.concatenate(([0.0], signs, [0.0]))
    weights = padded[:-1] - padded[1:]
    keep = weights != 0.0
    return seq.boundaries[keep], weights[keep]


def transfer_function(seq: DomainSequence, k: ArrayLike, chunk: int = 256) -> np.ndarray:
    """
    Σ_j g_j ∫_{s_j}^{e_j} exp(ikz) dz over the actual domain extents.

    For contiguous domains this is the boundary sum Σ_b exp(ikz_b)(g_b − g_{b+1})/(ik)
    with g_0 = g_{N+1} = 0, so only sign changes cost work. An anchored sequence
    contributes −g_j at each start and +g_j at each end. Widths may differ.

    Args:
        seq (DomainSequence): Poled crystal
        k (float | np.ndarray): Wavevectors in rad/nm
        chunk (int): Number of k values per vectorized block

    Returns:
        np.ndarray: Complex transfer values in nm, same shape as ``k``
    """
    k_arr = np.asarray(k, dtype=float)
    flat = np.atleast_1d(k_arr).ravel()
    z_b, w_b = _edge_weights(seq)

    out = np.empty(flat.size, dtype=complex)
    small = np.abs(flat) * seq.widths.max() < SERIES_THRESHOLD
    regular = np.nonzero(~small)[0]
    for part in chunk_slices(regular.size, chunk):
        kk = flat[regular[part]]
        phasors = np.exp(1j * np.outer(kk, z_b))
        out[regular[part]] = phasors @ w_b / (1j * kk)
    if np.any(small):
        mid = seq.domain_starts + seq.widths / 2.0
        g_w = seq.signs * seq.widths
        for idx in np.nonzero(small)[0]:
            out[idx] = np.sum(g_w * np.exp(1j * flat[idx] * mid))

    return out.reshape(k_arr.shape) if k_arr.ndim else out[0]


@dataclass(frozen=True)
class AchievedPMF:
    """Sampled PMF of a domain sequence.

    Attributes:
        k (np.ndarray): Strictly increasing wavevector grid, rad/nm
        amplitude (np.ndarray): Signed modulus |transfer| (sign from Ω window or reference)
        transfer (np.ndarray): Complex transfer values before taking the modulus
        omega (float, optional): Sign-window half-width Ω in rad/nm
    """

    k: np.ndarray
    amplitude: np.ndarray
    transfer: np.ndarray
    omega: Optional[float] = None

    def __call__(self, k: ArrayLike) -> np.ndarray:
        """
        Linear interpolation of the signed PMF.

        Raises:
            CoverageError: If any k lies outside the sampled grid
        """
        k = np.asarray(k, dtype=float)
        low, high = float(k.min()), float(k.max())
        if low < self.k[0] or high > self.k[-1]:
            raise CoverageError(
                f"PMF sampled on [{self.k[0]:.6e}, {self.k[-1]:.6e}] rad/nm but "
                f"[{low:.6e}, {high:.6e}] rad/nm is required"
            )
        return np.interp(k, self.k, self.amplitude)

    @property
    def peak_k(self) -> float:
        return float(self.k[np.argmax(np.abs(self.amplitude))])


def achieved_pmf(
    seq: DomainSequence,
    k: np.ndarray,
    omega: Optional[float] = None,
    sign_reference: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> AchievedPMF:
    """
    PMF |Σ_j g_j i·exp(ijkL_c)(exp(−ikL_c) − 1)/k| of a sequence on a k grid.

    Inside |k − k₀| < Ω the modulus is negated (second-order Hermite designs);
    with ``sign_reference`` the sign of the reference PMF is copied instead.

    Args:
        seq (DomainSequence): Poled crystal
        k (np.ndarray): Strictly increasing grid within ±0.1·k₀ of k₀
        omega (float, optional): Sign-window half-width Ω in rad/nm
        sign_reference (callable, optional): Real PMF providing the sign

    Returns:
        AchievedPMF: Sampled PMF

    Raises:
        ExcludedPointError: If the grid contains k = 0
        GridRangeError: If the grid is not increasing or leaves ±0.1·k₀
    """
    k = np.asarray(k, dtype=float)
    if k.ndim != 1 or k.size < 2 or np.any(np.diff(k) <= 0):
        raise GridRangeError("k grid must be one-dimensional and strictly increasing")
    if np.any(k == 0.0):
        raise ExcludedPointError("k = 0 is excluded from achieved-PMF grids")
    if np.any(np.abs(k - seq.k0) > 0.1 * seq.k0):
        raise GridRangeError(
            f"k grid [{k[0]:.6e}, {k[-1]:.6e}] leaves k0 ± 10% = "
            f"[{0.9 * seq.k0:.6e}, {1.1 * seq.k0:.6e}] rad/nm"
        )

    transfer = transfer_function(seq, k)
    amplitude = np.abs(transfer)
    if omega is not None:
        amplitude = np.where(np.abs(k - seq.k0) < omega, -amplitude, amplitude)
    elif sign_reference is not None:
        amplitude = np.where(np.asarray(sign_reference(k)) < 0, -amplitude, amplitude)

    logger.debug(f"Achieved PMF on {k.size} points for {seq.n_domains} domains")
    return AchievedPMF(k=k, amplitude=amplitude, transfer=transfer, omega=omega)
