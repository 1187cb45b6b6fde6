"""Target phase-matching functions."""

from typing import Dict, Type

from src.targets.base_target import BaseTarget
from src.targets.comb import CombTarget
from src.targets.hermite_gauss import HermiteGaussTarget
from src.targets.tabulated import TabulatedTarget
from src.utils.config import TargetSettings

# Register targets for easy access
TARGETS: Dict[str, Type[BaseTarget]] = {
    "hermite_gauss": HermiteGaussTarget,
    "comb": CombTarget,
    "tabulated": TabulatedTarget,
}


def build_target(settings: TargetSettings, k0: float, length_nm: float) -> BaseTarget:
    """
    Build the target PMF a run configuration describes.

    Args:
        settings (TargetSettings): Target section of the run configuration
        k0 (float): Carrier wavevector 2π/Λ in rad/nm
        length_nm (float): Crystal length in nm

    Returns:
        BaseTarget: Target instance

    Raises:
        ValueError: If the target kind is not registered
    """
    if settings.kind not in TARGETS:
        raise ValueError(
            f"Target kind '{settings.kind}' not found. "
            f"Available kinds: {', '.join(TARGETS.keys())}"
        )

    if settings.kind == "hermite_gauss":
        return HermiteGaussTarget(
            k0,
            length_nm,
            order=settings.order,
            width_nm=settings.width_nm,
            coefficient=settings.coefficient,
            sign_window_rad_per_nm=settings.sign_window_rad_per_nm,
        )
    if settings.kind == "comb":
        return CombTarget(
            k0,
            length_nm,
            tooth_pairs=settings.tooth_pairs,
            spacing_rad_per_nm=settings.spacing_rad_per_nm,
            tooth_width_nm=settings.tooth_width_nm,
            layout=settings.layout,
            coefficient=settings.coefficient,
        )
    return TabulatedTarget.from_csv(settings.path, k0, length_nm, settings.coefficient)


__all__ = ["TARGETS", "BaseTarget", "CombTarget", "HermiteGaussTarget", "TabulatedTarget", "build_target"]
