"""Spectral sampling grid and Gaussian pump envelope."""

from dataclasses import dataclass
from functools import cached_property
from typing import Union

import numpy as np

from src.dispersion.phase_matching import C_NM_PER_FS, omega_from_wavelength
from src.utils.exceptions import ParameterError
from src.utils.helpers import is_power_of_two


@dataclass(frozen=True)
class SpectralGrid:
    """Signal × idler wavelength grid, uniform in wavelength.

    Sample i sits at center + (i − M/2)·span/M, so index M/2 is the degenerate
    wavelength. Signal and idler share the axis.

    Attributes:
        size (int): M, a power of two
        center_nm (float): Degenerate wavelength in nm
        span_nm (float): Total wavelength span in nm
    """

    size: int
    center_nm: float
    span_nm: float

    def __post_init__(self):
        if not is_power_of_two(self.size) or self.size < 4:
            raise ParameterError(f"grid size must be a power of two >= 4, got {self.size}")
        if not self.center_nm > 0 or not self.span_nm > 0:
            raise ParameterError("grid center and span must be positive")
        if self.span_nm >= 2.0 * self.center_nm:
            raise ParameterError(f"span {self.span_nm} nm reaches zero wavelength")

    @property
    def d_lambda(self) -> float:
        return self.span_nm / self.size

    @cached_property
    def wavelengths(self) -> np.ndarray:
        """Sample wavelengths in nm, ascending."""
        return self.center_nm + (np.arange(self.size) - self.size // 2) * self.d_lambda

    @property
    def signal_nm(self) -> np.ndarray:
        return self.wavelengths

    @property
    def idler_nm(self) -> np.ndarray:
        return self.wavelengths

    @cached_property
    def omegas(self) -> np.ndarray:
        """Exact angular frequencies 2πc/λ of the samples, rad/fs (descending)."""
        return omega_from_wavelength(self.wavelengths)

    @property
    def center_omega(self) -> float:
        return float(omega_from_wavelength(self.center_nm))

    @property
    def d_omega(self) -> float:
        """Frequency step at the grid centre, rad/fs."""
        return 2.0 * np.pi * C_NM_PER_FS * self.d_lambda / self.center_nm**2

    @property
    def d_time(self) -> float:
        """Time step 2π/(M·Δω) of the conjugate grid, fs."""
        return 2.0 * np.pi / (self.size * self.d_omega)

    @property
    def times(self) -> np.ndarray:
        return (np.arange(self.size) - self.size // 2) * self.d_time

    def scaled(self, size: int = None, span_nm: float = None) -> "SpectralGrid":
        return SpectralGrid(size or self.size, self.center_nm, span_nm or self.span_nm)


@dataclass(frozen=True)
class PumpSpec:
    """Transform-limited Gaussian pump.

    ``fwhm_nm`` is the intensity FWHM in wavelength; the amplitude envelope is
    exp(−Δω²/(2σ_ω²)) with σ_ω = FWHM_ω/(2√ln2) so that |α|² has that FWHM.
    """

    center_nm: float = 1603.8
    fwhm_nm: float = 2.5

    def __post_init__(self):
        if not self.fwhm_nm > 0:
            raise ParameterError(f"pump FWHM must be positive, got {self.fwhm_nm}")
        if not self.center_nm > 0:
            raise ParameterError(f"pump wavelength must be positive, got {self.center_nm}")

    @property
    def omega0(self) -> float:
        return float(omega_from_wavelength(self.center_nm))

    @property
    def fwhm_omega(self) -> float:
        """Intensity FWHM in rad/fs, linearized at the centre wavelength."""
        return 2.0 * np.pi * C_NM_PER_FS * self.fwhm_nm / self.center_nm**2

    @property
    def sigma_omega(self) -> float:
        return self.fwhm_omega / (2.0 * np.sqrt(np.log(2.0)))

    @property
    def duration_fs(self) -> float:
        """Intensity FWHM of the transform-limited pulse, fs."""
        return 4.0 * np.log(2.0) / self.fwhm_omega


def pump_envelope(pump: PumpSpec, omega_sum: Union[float, np.ndarray]) -> np.ndarray:
    """
    Pump envelope α(ω_s + ω_i).

    Args:
        pump (PumpSpec): Pump centre and width
        omega_sum (float | np.ndarray): ω_s + ω_i in rad/fs

    Returns:
        np.ndarray: Real amplitude, 1 at ω_s + ω_i = ω_p0
    """
    detuning = np.asarray(omega_sum, dtype=float) - pump.omega0
    return np.exp(-(detuning**2) / (2.0 * pump.sigma_omega**2))
