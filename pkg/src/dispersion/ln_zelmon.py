"""Room-temperature three-term Sellmeier model of congruent lithium niobate."""

import numpy as np

from src.dispersion.base_model import DispersionModel, Polarization
from src.utils.logging import get_logger

logger = get_logger()

# (B, C) pairs, λ in µm, C in µm²
_SELLMEIER_COEFF = {
    Polarization.ORDINARY: ((2.6734, 0.01764), (1.2290, 0.05914), (12.614, 474.60)),
    Polarization.EXTRAORDINARY: ((2.9804, 0.02047), (0.5981, 0.0666), (8.9543, 416.08)),
}

MEASUREMENT_TEMPERATURE_K = 294.15


class LNZelmonModel(DispersionModel):
    """Congruent LN, n² = 1 + Σ Bλ²/(λ² − C). No temperature dependence."""

    name = "ln_zelmon_1997"
    window_nm = (400.0, 5000.0)

    def __init__(self, temperature_k: float = MEASUREMENT_TEMPERATURE_K):
        super().__init__(temperature_k)
        if abs(self.temperature_k - MEASUREMENT_TEMPERATURE_K) > 5.0:
            logger.warning(
                f"{self.name} has no thermo-optic terms; indices are those at "
                f"{MEASUREMENT_TEMPERATURE_K} K, not {self.temperature_k} K"
            )

    def _n_squared(self, pol: Polarization, wavelength_nm: np.ndarray) -> np.ndarray:
        lam2 = (wavelength_nm * 1e-3) ** 2
        total = np.ones_like(lam2)
        for b, c in _SELLMEIER_COEFF[pol]:
            total = total + b * lam2 / (lam2 - c)
        return total

    def _dn_squared(self, pol: Polarization, wavelength_nm: np.ndarray) -> np.ndarray:
        lam = wavelength_nm * 1e-3
        total = np.zeros_like(lam)
        for b, c in _SELLMEIER_COEFF[pol]:
            total = total - 2.0 * b * c * lam / (lam**2 - c) ** 2
        # per µm -> per nm
        return total * 1e-3
