"""Phase mismatch, group-velocity matching and poling-period solvers (type-II SPDC)."""

from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT
from scipy.optimize import brentq

from src.dispersion.base_model import ArrayLike, DispersionModel, Polarization
from src.utils.exceptions import InvalidPeriodError, NoRootError, PhaseMatchingError
from src.utils.logging import get_logger

logger = get_logger()

# nm/fs
C_NM_PER_FS = SPEED_OF_LIGHT * 1e9 / 1e15

TYPE_II = (Polarization.ORDINARY, Polarization.ORDINARY, Polarization.EXTRAORDINARY)


@dataclass(frozen=True)
class PhaseMatchConfig:
    """Wavelengths (nm), polarizations and optional poling period of a three-wave process.

    The default polarizations are the type-II o → o + e configuration.
    """

    pump_nm: float
    signal_nm: float
    idler_nm: float
    pump_pol: Polarization = Polarization.ORDINARY
    signal_pol: Polarization = Polarization.ORDINARY
    idler_pol: Polarization = Polarization.EXTRAORDINARY
    poling_period_nm: Optional[float] = None

    @classmethod
    def degenerate(cls, pump_nm: float, poling_period_nm: Optional[float] = None) -> "PhaseMatchConfig":
        """Frequency-degenerate pair: signal and idler both at twice the pump wavelength."""
        return cls(pump_nm, 2.0 * pump_nm, 2.0 * pump_nm, poling_period_nm=poling_period_nm)

    @property
    def polarizations(self) -> Tuple[Polarization, Polarization, Polarization]:
        return self.pump_pol, self.signal_pol, self.idler_pol

    @property
    def energy_mismatch(self) -> float:
        """1/λ_p − 1/λ_s − 1/λ_i in nm⁻¹."""
        return 1.0 / self.pump_nm - 1.0 / self.signal_nm - 1.0 / self.idler_nm


def _inverse_period(
    model: DispersionModel,
    pump_nm: ArrayLike,
    signal_nm: ArrayLike,
    idler_nm: ArrayLike,
    polarizations: Tuple[Polarization, Polarization, Polarization],
) -> ArrayLike:
    """n_p/λ_p − n_s/λ_s − n_i/λ_i in nm⁻¹ (material mismatch divided by 2π)."""
    pump_pol, signal_pol, idler_pol = polarizations
    return (
        np.asarray(model.refractive_index(pump_pol, pump_nm)) / pump_nm
        - np.asarray(model.refractive_index(signal_pol, signal_nm)) / signal_nm
        - np.asarray(model.refractive_index(idler_pol, idler_nm)) / idler_nm
    )


def phase_mismatch(
    model: DispersionModel,
    pump_nm: ArrayLike,
    signal_nm: ArrayLike,
    idler_nm: ArrayLike,
    polarizations: Tuple[Polarization, Polarization, Polarization] = TYPE_II,
    poling_period_nm: Optional[float] = None,
) -> ArrayLike:
    """
    Vectorized phase mismatch Δk = 2π(n_p/λ_p − n_s/λ_s − n_i/λ_i − 1/Λ).

    Args:
        model (DispersionModel): Index provider
        pump_nm, signal_nm, idler_nm (float | np.ndarray): Broadcastable wavelengths
        polarizations (tuple): Pump, signal and idler polarizations
        poling_period_nm (float, optional): Grating period; the grating term is
            omitted when None or infinite

    Returns:
        float | np.ndarray: Δk in rad/nm

    Raises:
        InvalidPeriodError: If the period is zero or negative
    """
    inverse = _inverse_period(model, pump_nm, signal_nm, idler_nm, polarizations)
    if poling_period_nm is not None:
        if not poling_period_nm > 0:
            raise InvalidPeriodError(f"poling period must be positive, got {poling_period_nm} nm")
        if np.isfinite(poling_period_nm):
            inverse = inverse - 1.0 / poling_period_nm
    result = 2.0 * np.pi * np.asarray(inverse)
    return float(result) if result.ndim == 0 else result


def delta_k(model: DispersionModel, cfg: PhaseMatchConfig) -> float:
    """
    Phase mismatch of a configured process, rad/nm.

    Args:
        model (DispersionModel): Index provider
        cfg (PhaseMatchConfig): Wavelengths, polarizations and optional period

    Returns:
        float: Δk in rad/nm
    """
    return phase_mismatch(
        model, cfg.pump_nm, cfg.signal_nm, cfg.idler_nm, cfg.polarizations, cfg.poling_period_nm
    )


def gvm_mismatch(
    model: DispersionModel,
    degenerate_nm: ArrayLike,
    polarizations: Tuple[Polarization, Polarization, Polarization] = TYPE_II,
) -> ArrayLike:
    """
    Group-velocity mismatch 2/V_p − 1/V_s − 1/V_i of the degenerate process.

    Args:
        model (DispersionModel): Index provider
        degenerate_nm (float | np.ndarray): Signal/idler wavelength; pump at half of it
        polarizations (tuple): Pump, signal and idler polarizations

    Returns:
        float | np.ndarray: Mismatch in fs/nm
    """
    pump_pol, signal_pol, idler_pol = polarizations
    wl = np.asarray(degenerate_nm, dtype=float)
    mismatch = (
        2.0 * np.asarray(model.group_index(pump_pol, wl / 2.0))
        - np.asarray(model.group_index(signal_pol, wl))
        - np.asarray(model.group_index(idler_pol, wl))
    ) / C_NM_PER_FS
    return float(mismatch) if mismatch.ndim == 0 else mismatch


def solve_gvm_wavelength(
    model: DispersionModel,
    bracket: Tuple[float, float] = (2500.0, 4000.0),
    polarizations: Tuple[Polarization, Polarization, Polarization] = TYPE_II,
    xtol: float = 1e-4,
) -> float:
    """
    Degenerate wavelength at which the GVM condition holds.

    Brent's method (bisection safeguarded secant/inverse-quadratic steps).

    Args:
        model (DispersionModel): Index provider
        bracket (Tuple[float, float]): Search interval in nm
        polarizations (tuple): Pump, signal and idler polarizations
        xtol (float): Absolute tolerance in nm

    Returns:
        float: Root wavelength in nm

    Raises:
        NoRootError: If the mismatch has the same sign at both ends
    """
    low, high = sorted(float(b) for b in bracket)
    f_low = gvm_mismatch(model, low, polarizations)
    f_high = gvm_mismatch(model, high, polarizations)
    if f_low == 0.0:
        return low
    if f_high == 0.0:
        return high
    if np.sign(f_low) == np.sign(f_high):
        raise NoRootError(
            f"GVM mismatch does not change sign on [{low:g}, {high:g}] nm "
            f"({f_low:.3e} and {f_high:.3e} fs/nm)"
        )
    root = brentq(lambda wl: gvm_mismatch(model, wl, polarizations), low, high, xtol=xtol)
    logger.debug(f"GVM wavelength {root:.4f} nm in [{low:g}, {high:g}] nm")
    return float(root)


def solve_poling_period(
    model: DispersionModel,
    pump_nm: float,
    signal_nm: float,
    idler_nm: float,
    polarizations: Tuple[Polarization, Polarization, Polarization] = TYPE_II,
) -> float:
    """
    First-order QPM poling period Λ = 2π/(k_p − k_s − k_i).

    Args:
        model (DispersionModel): Index provider
        pump_nm, signal_nm, idler_nm (float): Wavelengths in nm
        polarizations (tuple): Pump, signal and idler polarizations

    Returns:
        float: Λ in nm

    Raises:
        PhaseMatchingError: If k_p − k_s − k_i is not positive
    """
    inverse = float(_inverse_period(model, pump_nm, signal_nm, idler_nm, polarizations))
    if not inverse > 0:
        raise PhaseMatchingError(
            f"k_p - k_s - k_i = {2 * np.pi * inverse:.3e} rad/nm is not positive; "
            f"no first-order grating phase matches {pump_nm:g} -> {signal_nm:g} + {idler_nm:g} nm"
        )
    return 1.0 / inverse


def period_for(model: DispersionModel, cfg: PhaseMatchConfig) -> float:
    """``solve_poling_period`` for a configured process."""
    return solve_poling_period(model, cfg.pump_nm, cfg.signal_nm, cfg.idler_nm, cfg.polarizations)


def omega_from_wavelength(wavelength_nm: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """Angular frequency in rad/fs of a vacuum wavelength in nm."""
    return 2.0 * np.pi * C_NM_PER_FS / np.asarray(wavelength_nm, dtype=float)


def wavelength_from_omega(omega: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """Vacuum wavelength in nm of an angular frequency in rad/fs."""
    return 2.0 * np.pi * C_NM_PER_FS / np.asarray(omega, dtype=float)
