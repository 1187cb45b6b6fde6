"""Dispersion models and phase-matching solvers."""

from typing import Dict, Type

from src.dispersion.base_model import ConstantIndexModel, DispersionModel, Polarization
from src.dispersion.ln_schlarb import LNSchlarbModel
from src.dispersion.ln_zelmon import LNZelmonModel

# Register models for easy access
MODELS: Dict[str, Type[DispersionModel]] = {
    "ln_schlarb_1994": LNSchlarbModel,
    "ln_zelmon_1997": LNZelmonModel,
}


def get_model(name: str, temperature_k: float = 298.15) -> DispersionModel:
    """
    Instantiate a dispersion model by name.

    Args:
        name (str): Model identifier
        temperature_k (float): Crystal temperature

    Returns:
        DispersionModel: Model instance

    Raises:
        ValueError: If the model name is not registered
    """
    if name not in MODELS:
        raise ValueError(
            f"Dispersion model '{name}' not found. "
            f"Available models: {', '.join(MODELS.keys())}"
        )

    return MODELS[name](temperature_k=temperature_k)


__all__ = [
    "MODELS",
    "ConstantIndexModel",
    "DispersionModel",
    "LNSchlarbModel",
    "LNZelmonModel",
    "Polarization",
    "get_model",
]
