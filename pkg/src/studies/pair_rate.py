"""Single-mode pair-generation rate of a poled crystal (SI units inside)."""

import dataclasses
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT
from scipy.constants import epsilon_0
from scipy.integrate import simpson

from src.dispersion.base_model import DispersionModel, Polarization
from src.dispersion.phase_matching import TYPE_II, phase_mismatch
from src.poling.domains import DomainSequence
from src.poling.pmf import transfer_function
from src.utils.exceptions import ConvergenceError, ParameterError
from src.utils.logging import get_logger

logger = get_logger()

NM = 1e-9
UM = 1e-6
PM_PER_V = 1e-12


@dataclass(frozen=True)
class RateParams:
    """Physical inputs of the rate formula; wavelengths in nm, waists in µm, d_eff in pm/V."""

    pump_power_w: float = 1.0e-3
    pump_waist_um: float = 50.0
    biphoton_waist_um: float = 50.0
    d_eff_pm_per_v: float = -3.26
    n_signal: float = 2.1302
    n_idler: float = 2.0612
    n_pump: float = 2.2026
    ng_signal: float = 2.3276
    ng_idler: float = 2.2335
    pump_wavelength_nm: float = 1603.8
    length_nm: float = 3.0e7

    def __post_init__(self):
        for f in dataclasses.fields(self):
            if f.name != "d_eff_pm_per_v" and not getattr(self, f.name) > 0:
                raise ParameterError(f"rate parameter {f.name} must be positive, got {getattr(self, f.name)}")

    @classmethod
    def from_model(
        cls,
        model: DispersionModel,
        pump_wavelength_nm: float = 1603.8,
        polarizations: Tuple[Polarization, Polarization, Polarization] = TYPE_II,
        **overrides,
    ) -> "RateParams":
        """Rate parameters with indices taken from a dispersion model at degeneracy."""
        pump_pol, signal_pol, idler_pol = polarizations
        degenerate = 2.0 * pump_wavelength_nm
        return cls(
            pump_wavelength_nm=pump_wavelength_nm,
            n_pump=model.refractive_index(pump_pol, pump_wavelength_nm),
            n_signal=model.refractive_index(signal_pol, degenerate),
            n_idler=model.refractive_index(idler_pol, degenerate),
            ng_signal=model.group_index(signal_pol, degenerate),
            ng_idler=model.group_index(idler_pol, degenerate),
            **overrides,
        )

    @property
    def field_amplitude(self) -> float:
        """Pump field E_p⁰ in V/m from P = c·ε₀·n_p·π·σ_p²·|E_p⁰|²."""
        waist = self.pump_waist_um * UM
        return float(np.sqrt(self.pump_power_w / (SPEED_OF_LIGHT * epsilon_0 * self.n_pump * np.pi * waist**2)))

    @property
    def prefactor(self) -> float:
        """Everything in front of the signal-frequency integral, SI."""
        sigma_p = self.pump_waist_um * UM
        sigma_1 = self.biphoton_waist_um * UM
        d_eff = self.d_eff_pm_per_v * PM_PER_V
        return (
            self.pump_power_w
            / (8.0 * epsilon_0 * np.pi**2 * SPEED_OF_LIGHT**3)
            * (self.ng_signal * self.ng_idler)
            / (self.n_signal**2 * self.n_idler**2 * self.n_pump)
            * (sigma_p / (sigma_1**2 + 2.0 * sigma_p**2)) ** 2
            * (4.0 * d_eff) ** 2
        )

    def replace(self, **changes) -> "RateParams":
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class RateReport:
    rate_per_s: float
    rate_per_s_per_mw: float
    band_nm: Tuple[float, float]
    quadrature_points: int
    converged: bool
    estimates: List[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "rate_per_s_per_mW": self.rate_per_s_per_mw,
            "band_nm": list(self.band_nm),
            "quadrature_points": self.quadrature_points,
            "converged": self.converged,
        }


def miller_scaled_deff(
    d_ref_pm_per_v: float,
    reference_nm: Sequence[float],
    target_nm: Sequence[float],
    model: DispersionModel,
    polarizations: Tuple[Polarization, Polarization, Polarization] = TYPE_II,
) -> float:
    """
    Scale d_eff between wavelength triples with Miller's rule, χ⁽¹⁾ = n² − 1.

    Args:
        d_ref_pm_per_v (float): Known coefficient at the reference triple
        reference_nm (Sequence[float]): Pump, signal, idler wavelengths of d_ref
        target_nm (Sequence[float]): Pump, signal, idler wavelengths wanted
        model (DispersionModel): Index provider
        polarizations (tuple): Pump, signal, idler polarizations

    Returns:
        float: d_eff at the target triple, pm/V
    """
    if len(reference_nm) != 3 or len(target_nm) != 3:
        raise ParameterError("Miller scaling needs pump, signal and idler wavelengths")
    ratio = 1.0
    for pol, ref, tgt in zip(polarizations, reference_nm, target_nm):
        if ref == tgt:
            continue
        ratio *= (model.refractive_index(pol, tgt) ** 2 - 1.0) / (model.refractive_index(pol, ref) ** 2 - 1.0)
    return d_ref_pm_per_v * ratio


def _signal_range(model: DispersionModel, omega_p: float) -> Tuple[float, float]:
    """Signal frequencies (rad/s) whose signal and idler both lie in the dispersion window."""
    low_nm, high_nm = model.window_nm
    omega_edge = 2.0 * np.pi * SPEED_OF_LIGHT / (high_nm * NM)
    omega_top = 2.0 * np.pi * SPEED_OF_LIGHT / (low_nm * NM)
    return max(omega_edge, omega_p - omega_top), min(omega_p - omega_edge, omega_top)


def transfer_integral(
    seq: DomainSequence,
    omega_s: np.ndarray,
    pump_wavelength_nm: float,
    model: DispersionModel,
    polarizations: Tuple[Polarization, Polarization, Polarization] = TYPE_II,
) -> np.ndarray:
    """
    ∫₀ᴸ χ̄(z)·exp(−ikz) dz with k = (ω_p n_p − ω_s n_s − ω_i n_i)/c.

    Frequencies mapping outside the dispersion window contribute 0 (with a warning).

    Args:
        seq (DomainSequence): Poling profile χ̄(z)
        omega_s (np.ndarray): Signal angular frequencies, rad/s, in (0, ω_p)
        pump_wavelength_nm (float): Pump wavelength λ_p
        model (DispersionModel): Index provider
        polarizations (tuple): Pump, signal, idler polarizations

    Returns:
        np.ndarray: Complex values in m
    """
    omega_s = np.asarray(omega_s, dtype=float)
    omega_p = 2.0 * np.pi * SPEED_OF_LIGHT / (pump_wavelength_nm * NM)
    if np.any(omega_s <= 0) or np.any(omega_s >= omega_p):
        raise ParameterError("signal frequencies must lie in (0, omega_p)")

    low, high = _signal_range(model, omega_p)
    inside = (omega_s >= low) & (omega_s <= high)
    if not np.all(inside):
        logger.warning(
            f"{int(np.sum(~inside))} signal frequencies map outside the "
            f"{model.window_nm} nm dispersion window and are set to 0"
        )

    result = np.zeros(omega_s.shape, dtype=complex)
    ws = omega_s[inside]
    signal_nm = 2.0 * np.pi * SPEED_OF_LIGHT / ws / NM
    idler_nm = 2.0 * np.pi * SPEED_OF_LIGHT / (omega_p - ws) / NM
    k = phase_mismatch(model, pump_wavelength_nm, signal_nm, idler_nm, polarizations)
    # real profile: ∫χe^{−ikz} = conj(∫χe^{ikz})
    result[inside] = np.conj(transfer_function(seq, np.atleast_1d(k))) * NM
    return result


def pair_rate(
    seq: DomainSequence,
    params: RateParams,
    model: DispersionModel,
    polarizations: Tuple[Polarization, Polarization, Polarization] = TYPE_II,
    coarse_points: int = 4096,
    max_doublings: int = 4,
    rtol: float = 0.01,
    band_threshold: float = 1e-8,
) -> RateReport:
    """
    Pair rate = prefactor·∫ω_s(ω_p − ω_s)|∫χ̄e^{−ikz}dz|²dω_s.

    A coarse scan finds the band where the integrand exceeds ``band_threshold``
    of its peak; Simpson's rule on the band is refined by doubling until two
    successive estimates agree within ``rtol``.

    Args:
        seq (DomainSequence): Poling profile
        params (RateParams): Physical parameters
        model (DispersionModel): Index provider for the phase mismatch
        polarizations (tuple): Pump, signal, idler polarizations
        coarse_points (int): Samples of the band scan and of the first estimate
        max_doublings (int): Refinements allowed after the first estimate
        rtol (float): Relative convergence tolerance
        band_threshold (float): Band edge relative to the integrand peak

    Returns:
        RateReport: Rate in pairs/s and per mW of pump

    Raises:
        ConvergenceError: If the estimates have not settled after the doublings
    """
    omega_p = 2.0 * np.pi * SPEED_OF_LIGHT / (params.pump_wavelength_nm * NM)
    low, high = _signal_range(model, omega_p)
    if not low < high:
        raise ParameterError("no signal frequency keeps both photons inside the dispersion window")
    # the 0..ω_p range always reaches beyond the window edges
    logger.warning(
        f"Signal integration clipped to the dispersion window: "
        f"{2e9 * np.pi * SPEED_OF_LIGHT / high:.1f}-{2e9 * np.pi * SPEED_OF_LIGHT / low:.1f} nm"
    )

    def integrand(omega: np.ndarray) -> np.ndarray:
        transfer = transfer_integral(seq, omega, params.pump_wavelength_nm, model, polarizations)
        return omega * (omega_p - omega) * np.abs(transfer) ** 2

    coarse = np.linspace(low, high, coarse_points)
    values = integrand(coarse)
    peak = float(values.max())
    if peak <= 0.0:
        logger.warning("Integrand vanishes on the whole band; rate is 0")
        return RateReport(0.0, 0.0, (0.0, 0.0), coarse_points, True, [0.0])

    above = np.nonzero(values > band_threshold * peak)[0]
    first, last = max(above[0] - 1, 0), min(above[-1] + 1, coarse_points - 1)
    band = (coarse[first], coarse[last])

    estimates: List[float] = []
    points: List[int] = []
    converged = False
    for doubling in range(max_doublings + 1):
        n = coarse_points * 2**doubling + 1
        omega = np.linspace(band[0], band[1], n)
        estimates.append(float(simpson(integrand(omega), x=omega)))
        points.append(n)
        logger.debug(f"Rate quadrature with {n} points: {estimates[-1]:.6e}")
        if doubling > 0 and abs(estimates[-1] - estimates[-2]) <= rtol * abs(estimates[-1]):
            converged = True
            break

    if not converged:
        raise ConvergenceError(
            f"pair-rate quadrature did not converge to {rtol:.0%} after {max_doublings} doublings",
            diagnostics={"points": points, "estimates": estimates, "band_rad_per_s": band},
        )

    rate = params.prefactor * estimates[-1]
    band_nm = (
        2.0 * np.pi * SPEED_OF_LIGHT / band[1] / NM,
        2.0 * np.pi * SPEED_OF_LIGHT / band[0] / NM,
    )
    logger.info(f"Pair rate {rate:.4g} 1/s over {band_nm[0]:.1f}-{band_nm[1]:.1f} nm ({points[-1]} points)")
    return RateReport(
        rate_per_s=rate,
        rate_per_s_per_mw=rate / (params.pump_power_w * 1e3),
        band_nm=band_nm,
        quadrature_points=points[-1],
        converged=True,
        estimates=estimates,
    )
