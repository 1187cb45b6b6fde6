"""User-supplied target PMF sampled in k-space."""

from pathlib import Path
from typing import Optional, Union

import numpy as np
import pandas as pd
from scipy.integrate import trapezoid

from src.targets.base_target import ArrayLike, BaseTarget
from src.utils.exceptions import ConfigError, ParameterError
from src.utils.helpers import chunk_slices


class TabulatedTarget(BaseTarget):
    """Linear interpolation of (k, amplitude) samples, zero outside the table.

    The spatial envelope is the trapezoid-rule transform
    Φ(z) = (1/2π)∫φ(k₀+q)e^{iqz}dq of the samples.
    """

    kind = "tabulated"
    forward_norm = 1.0

    def __init__(
        self,
        k0: float,
        length_nm: float,
        k_samples: np.ndarray,
        amplitudes: np.ndarray,
        coefficient: Optional[float] = None,
    ):
        super().__init__(k0, length_nm)
        k_samples = np.asarray(k_samples, dtype=float)
        amplitudes = np.asarray(amplitudes, dtype=float)
        if k_samples.ndim != 1 or k_samples.shape != amplitudes.shape or k_samples.size < 2:
            raise ParameterError("tabulated target needs two equally long columns with >= 2 rows")
        if np.any(np.diff(k_samples) <= 0):
            raise ParameterError("tabulated k samples must be strictly increasing")
        self.k_samples = k_samples
        self.amplitudes = amplitudes
        self._coefficient = coefficient

    @classmethod
    def from_csv(
        cls, path: Union[str, Path], k0: float, length_nm: float, coefficient: Optional[float] = None
    ) -> "TabulatedTarget":
        """
        Read a two-column CSV (k in rad/nm, amplitude); a header row is optional.

        Args:
            path (str | Path): CSV file
            k0 (float): Carrier wavevector in rad/nm
            length_nm (float): Crystal length in nm
            coefficient (float, optional): Amplitude-curve coefficient

        Returns:
            TabulatedTarget: Target built from the samples
        """
        if not Path(path).exists():
            raise ConfigError(f"tabulated target file not found: {path}", "target.path")
        frame = pd.read_csv(path, header=None, comment="#")
        if frame.shape[1] != 2:
            raise ConfigError(f"expected 2 columns in {path}, found {frame.shape[1]}", "target.path")
        frame = frame.apply(pd.to_numeric, errors="coerce").dropna()
        return cls(k0, length_nm, frame[0].to_numpy(), frame[1].to_numpy(), coefficient)

    @property
    def amplitude_coefficient(self) -> float:
        if self._coefficient is not None:
            return self._coefficient
        # peak slope at half of the largest single-domain slope 2/π
        z = np.linspace(-self.length_nm / 2.0, self.length_nm / 2.0, 2001)
        peak = float(np.max(np.abs(self.tracking_envelope(z))))
        if peak == 0.0:
            raise ParameterError("tabulated target has an identically zero spatial envelope")
        self._coefficient = 1.0 / (np.pi * peak)
        return self._coefficient

    def pmf(self, k: ArrayLike) -> np.ndarray:
        return np.interp(np.asarray(k, dtype=float), self.k_samples, self.amplitudes, left=0.0, right=0.0)

    def spatial_envelope(self, z: ArrayLike) -> np.ndarray:
        z = np.asarray(z, dtype=float)
        flat = np.atleast_1d(z).ravel()
        q = self.k_samples - self.k0
        out = np.empty(flat.size, dtype=complex)
        for part in chunk_slices(flat.size, 512):
            kernel = np.exp(1j * np.outer(flat[part], q))
            out[part] = trapezoid(kernel * self.amplitudes, q, axis=1) / (2.0 * np.pi)
        return out.reshape(z.shape) if z.ndim else out[0]
