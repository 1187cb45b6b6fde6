"""Base dispersion model: refractive and group indices of a birefringent crystal."""

from abc import ABC, abstractmethod
from enum import Enum
from typing import Tuple, Union

import numpy as np

from src.utils.exceptions import WavelengthRangeError

ArrayLike = Union[float, np.ndarray]


class Polarization(str, Enum):
    """Ray polarization in a uniaxial crystal."""

    ORDINARY = "o"
    EXTRAORDINARY = "e"

    @classmethod
    def parse(cls, value: Union[str, "Polarization"]) -> "Polarization":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"Unknown polarization '{value}', expected 'o' or 'e'")


class DispersionModel(ABC):
    """Sellmeier-type index provider for o- and e-polarized light.

    Subclasses supply ``n²(λ)`` and its wavelength derivative; this class turns them
    into refractive and group indices and guards the validity window.

    Attributes:
        name (str): Registry key of the model
        window_nm (Tuple[float, float]): Validity window in nm
        temperature_k (float): Crystal temperature
    """

    name: str = "base"
    window_nm: Tuple[float, float] = (400.0, 5500.0)

    def __init__(self, temperature_k: float = 298.15):
        if temperature_k <= 0:
            raise ValueError(f"Temperature must be positive, got {temperature_k} K")
        self.temperature_k = float(temperature_k)

    @abstractmethod
    def _n_squared(self, pol: Polarization, wavelength_nm: np.ndarray) -> np.ndarray:
        """Return n² at the given wavelengths (nm)."""

    @abstractmethod
    def _dn_squared(self, pol: Polarization, wavelength_nm: np.ndarray) -> np.ndarray:
        """Return d(n²)/dλ in nm⁻¹ at the given wavelengths (nm)."""

    def check_window(self, wavelength_nm: ArrayLike) -> None:
        """
        Validate wavelengths against the model window.

        Args:
            wavelength_nm (float | np.ndarray): Wavelengths in nm

        Raises:
            WavelengthRangeError: Naming the first offending wavelength
        """
        values = np.atleast_1d(np.asarray(wavelength_nm, dtype=float))
        low, high = self.window_nm
        bad = ~((values >= low) & (values <= high))
        if np.any(bad):
            raise WavelengthRangeError(float(values[bad][0]), self.window_nm, self.name)

    def refractive_index(self, pol: Union[str, Polarization], wavelength_nm: ArrayLike) -> ArrayLike:
        """
        Refractive index at the model temperature.

        Args:
            pol (str | Polarization): ``o`` or ``e``
            wavelength_nm (float | np.ndarray): Vacuum wavelength in nm

        Returns:
            float | np.ndarray: n(λ), same shape as the input
        """
        pol = Polarization.parse(pol)
        self.check_window(wavelength_nm)
        wl = np.asarray(wavelength_nm, dtype=float)
        n = np.sqrt(self._n_squared(pol, wl))
        return float(n) if n.ndim == 0 else n

    def group_index(self, pol: Union[str, Polarization], wavelength_nm: ArrayLike) -> ArrayLike:
        """
        Group index n_g = n − λ·dn/dλ, so that 1/V = n_g/c.

        Args:
            pol (str | Polarization): ``o`` or ``e``
            wavelength_nm (float | np.ndarray): Vacuum wavelength in nm

        Returns:
            float | np.ndarray: n_g(λ)
        """
        pol = Polarization.parse(pol)
        self.check_window(wavelength_nm)
        wl = np.asarray(wavelength_nm, dtype=float)
        n = np.sqrt(self._n_squared(pol, wl))
        dn = self._dn_squared(pol, wl) / (2.0 * n)
        ng = n - wl * dn
        return float(ng) if ng.ndim == 0 else ng

    def wavevector(self, pol: Union[str, Polarization], wavelength_nm: ArrayLike) -> ArrayLike:
        """Wavevector 2πn/λ in rad/nm."""
        wl = np.asarray(wavelength_nm, dtype=float)
        k = 2.0 * np.pi * np.asarray(self.refractive_index(pol, wl)) / wl
        return float(k) if k.ndim == 0 else k

    def __repr__(self) -> str:
        return f"{type(self).__name__}(temperature_k={self.temperature_k})"


class ConstantIndexModel(DispersionModel):
    """Dispersion-free model with fixed indices, used as an analytic reference."""

    name = "constant"

    def __init__(self, n_o: float = 2.2, n_e: float = 2.2, temperature_k: float = 298.15):
        super().__init__(temperature_k)
        self.indices = {Polarization.ORDINARY: n_o, Polarization.EXTRAORDINARY: n_e}

    def _n_squared(self, pol: Polarization, wavelength_nm: np.ndarray) -> np.ndarray:
        return np.full_like(wavelength_nm, self.indices[pol] ** 2, dtype=float)

    def _dn_squared(self, pol: Polarization, wavelength_nm: np.ndarray) -> np.ndarray:
        return np.zeros_like(wavelength_nm, dtype=float)
