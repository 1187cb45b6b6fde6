"""Comb-like target PMF: equally spaced Gaussian teeth around the carrier."""

from typing import Optional

import numpy as np

from src.targets.base_target import ArrayLike, BaseTarget
from src.utils.exceptions import ParameterError

LAYOUTS = ("half_integer", "integer")


class CombTarget(BaseTarget):
    """Σ exp(−ξ²(k − k₀ − o·σ̃)²/2) over tooth offsets o.

    ``half_integer`` places 2N teeth at o = ±(n + ½), n = 0..N−1 (no tooth on the
    carrier); ``integer`` places 2N + 1 teeth at o = −N..N. With the transform
    convention Φ(z) = (1/√2π)∫φ(k₀+q)e^{iqz}dq the spatial envelope is
    (1/ξ)·exp(−z²/(2ξ²))·Σ cos(o·σ̃·z).
    """

    kind = "comb"
    forward_norm = 1.0 / np.sqrt(2.0 * np.pi)

    def __init__(
        self,
        k0: float,
        length_nm: float,
        tooth_pairs: int = 5,
        spacing_rad_per_nm: Optional[float] = None,
        tooth_width_nm: Optional[float] = None,
        layout: str = "half_integer",
        coefficient: Optional[float] = None,
    ):
        super().__init__(k0, length_nm)
        if tooth_pairs < 1:
            raise ParameterError(f"tooth_pairs must be >= 1, got {tooth_pairs}")
        if layout not in LAYOUTS:
            raise ParameterError(f"layout must be one of {', '.join(LAYOUTS)}, got '{layout}'")
        self.tooth_pairs = int(tooth_pairs)
        self.layout = layout
        self.spacing = float(spacing_rad_per_nm) if spacing_rad_per_nm is not None else self.k0 / 400.0
        self.xi = float(tooth_width_nm) if tooth_width_nm is not None else self.length_nm / 4.5
        if not self.spacing > 0 or not self.xi > 0:
            raise ParameterError("tooth spacing and tooth width must be positive")
        self._coefficient = coefficient

        if layout == "half_integer":
            half = np.arange(self.tooth_pairs) + 0.5
            self.offsets = np.concatenate((-half[::-1], half))
        else:
            self.offsets = np.arange(-self.tooth_pairs, self.tooth_pairs + 1, dtype=float)

    @property
    def tooth_count(self) -> int:
        return int(self.offsets.size)

    @property
    def tooth_positions(self) -> np.ndarray:
        """Tooth centres in rad/nm."""
        return self.k0 + self.offsets * self.spacing

    @property
    def amplitude_coefficient(self) -> float:
        if self._coefficient is not None:
            return self._coefficient
        # C̃ = 5e4·L·σ̃/π
        return 5.0e4 * self.length_nm * self.spacing / np.pi

    def pmf(self, k: ArrayLike) -> np.ndarray:
        q = np.asarray(k, dtype=float)[..., None] - self.tooth_positions
        return np.exp(-(self.xi**2) * q**2 / 2.0).sum(axis=-1)

    def spatial_envelope(self, z: ArrayLike) -> np.ndarray:
        z = np.asarray(z, dtype=float)
        beats = np.cos(z[..., None] * self.offsets * self.spacing).sum(axis=-1)
        return (np.exp(-(z**2) / (2.0 * self.xi**2)) * beats / self.xi).astype(complex)
