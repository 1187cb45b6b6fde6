"""Hermite-Gaussian target PMF (n+1 frequency modes for order n)."""

from functools import lru_cache
from math import factorial
from typing import Callable, Optional

import numpy as np
from scipy.special import erf, eval_hermite

from src.targets.base_target import ArrayLike, BaseTarget
from src.utils.exceptions import ParameterError

# Ω·σ of the reference three-mode design (Ω = 1.457e-7 rad/nm at σ = 5 mm)
SIGN_WINDOW_WIDTHS = 0.7285

# peak of |H₂(x)e^{−x²/2}|, reached at x² = 5/2
_ORDER2_PEAK = 8.0 * np.exp(-1.25)


@lru_cache(maxsize=None)
def hermite_normalization(order: int) -> float:
    """
    Prefactor c_n giving every order the peak |φ| of the second-order target.

    Args:
        order (int): Hermite order n ≥ 0

    Returns:
        float: c_n, with c_2 = 1/(2√2)
    """
    if order == 2:
        return 1.0 / (2.0 * np.sqrt(2.0))
    span = np.sqrt(2.0 * order + 1.0) + 4.0
    x = np.linspace(0.0, span, 400001)
    peak = np.max(np.abs(eval_hermite(order, x) * np.exp(-(x**2) / 2.0)))
    return _ORDER2_PEAK / (2.0 * np.sqrt(2.0) * peak)


class HermiteGaussTarget(BaseTarget):
    """φ(k) = c_n·exp(−σ²(k−k₀)²/2)·H_n(σ(k−k₀)) with physicists' Hermite H_n.

    The Hermite functions are eigenfunctions of the Fourier transform, so the
    spatial target is analytic for every order:

        Φ(z) = c_n·iⁿ·exp(−z²/(2σ²))·H_n(z/σ)/(√(2π)·σ)

    using Φ(z) = (1/2π)∫φ(k₀+q)e^{iqz}dq. For n = 2 this is
    exp(−z²/(2σ²))(σ² − 2z²)/(2√π σ³).
    """

    kind = "hermite_gauss"
    forward_norm = 1.0

    def __init__(
        self,
        k0: float,
        length_nm: float,
        order: int = 2,
        width_nm: Optional[float] = None,
        coefficient: Optional[float] = None,
        sign_window_rad_per_nm: Optional[float] = None,
    ):
        super().__init__(k0, length_nm)
        if order < 0:
            raise ParameterError(f"Hermite order must be >= 0, got {order}")
        self.order = int(order)
        self.sigma = float(width_nm) if width_nm is not None else self.length_nm / 6.0
        if not self.sigma > 0:
            raise ParameterError(f"width sigma must be positive, got {self.sigma}")
        self._coefficient = coefficient
        self._sign_window = sign_window_rad_per_nm
        self.norm = hermite_normalization(self.order)

    @property
    def amplitude_coefficient(self) -> float:
        if self._coefficient is not None:
            return self._coefficient
        # C = 2√e·σ/π
        return 2.0 * np.sqrt(np.e) * self.sigma / np.pi

    @property
    def sign_window(self) -> Optional[float]:
        if self._sign_window is not None:
            return self._sign_window
        return SIGN_WINDOW_WIDTHS / self.sigma if self.order == 2 else None

    @property
    def sign_reference(self) -> Optional[Callable[[np.ndarray], np.ndarray]]:
        return None if self.sign_window is not None else self.pmf

    def pmf(self, k: ArrayLike) -> np.ndarray:
        x = self.sigma * (np.asarray(k, dtype=float) - self.k0)
        return self.norm * np.exp(-(x**2) / 2.0) * eval_hermite(self.order, x)

    def spatial_envelope(self, z: ArrayLike) -> np.ndarray:
        u = np.asarray(z, dtype=float) / self.sigma
        real = self.norm * np.exp(-(u**2) / 2.0) * eval_hermite(self.order, u)
        return (1j**self.order) * real / (np.sqrt(2.0 * np.pi) * self.sigma)

    def tracking_envelope(self, z: ArrayLike) -> np.ndarray:
        # odd orders carry a constant ±i
        phase = (-1j) ** (self.order % 2)
        return np.real(phase * self.spatial_envelope(z))

    def amplitude_target(self, z: ArrayLike) -> ArrayLike:
        """
        Target amplitude curve; closed form for the second order.

        Args:
            z (float | np.ndarray): Positions in nm, within [0, L]

        Returns:
            float | np.ndarray: A_target(z)
        """
        if self.order != 2:
            return super().amplitude_target(z)

        z_arr = np.asarray(z, dtype=float)
        self._check_range(np.atleast_1d(z_arr))
        L, s = self.length_nm, self.sigma
        value = (
            self.amplitude_coefficient
            / (4.0 * np.sqrt(np.pi) * s)
            * (
                2.0 * L * np.exp(-(L**2) / (8.0 * s**2))
                + np.exp(-((L - 2.0 * z_arr) ** 2) / (8.0 * s**2)) * (4.0 * z_arr - 2.0 * L)
                + np.sqrt(2.0 * np.pi)
                * s
                * (-erf(L / (2.0 * np.sqrt(2.0) * s)) + erf((L - 2.0 * z_arr) / (2.0 * np.sqrt(2.0) * s)))
            )
        )
        return float(value) if value.ndim == 0 else value

    def norm_squared(self) -> float:
        """∫|φ|²dk = c_n²·2ⁿ·n!·√π/σ (Hermite orthogonality)."""
        return self.norm**2 * 2.0**self.order * factorial(self.order) * np.sqrt(np.pi) / self.sigma
