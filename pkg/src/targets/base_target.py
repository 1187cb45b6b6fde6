"""Base target phase-matching function with its spatial form and amplitude curve."""

from abc import ABC, abstractmethod
from functools import cached_property
from typing import Callable, Optional, Tuple, Union

import numpy as np
from scipy.integrate import quad, trapezoid

from src.utils.exceptions import AmplitudeRangeError, ParameterError
from src.utils.logging import get_logger

ArrayLike = Union[float, np.ndarray]

# nodes of the cached cumulative table on [0, L]
TABLE_SEGMENTS = 2048


class BaseTarget(ABC):
    """Target PMF φ_target(k) centered on the carrier k₀ of a crystal of length L.

    Subclasses define the k-space shape, its spatial transform with the carrier
    removed, and the proportional coefficient that scales the amplitude curve
    the poling tracker follows. The amplitude curve is

        A_target(z) = C ∫₀ᶻ Re Φ(z' − L/2) dz'

    where Φ is the (phase-stripped) spatial envelope.

    Attributes:
        k0 (float): Carrier wavevector 2π/Λ in rad/nm
        length_nm (float): Crystal length L in nm
    """

    kind: str = "base"

    # forward transform φ(k₀ + q) = forward_norm · ∫ Φ(z) e^{−iqz} dz
    forward_norm: float = 1.0

    def __init__(self, k0: float, length_nm: float):
        if not k0 > 0:
            raise ParameterError(f"carrier k0 must be positive, got {k0}")
        if not length_nm > 0:
            raise ParameterError(f"crystal length must be positive, got {length_nm}")
        self.k0 = float(k0)
        self.length_nm = float(length_nm)
        self.logger = get_logger()

    @abstractmethod
    def pmf(self, k: ArrayLike) -> np.ndarray:
        """Target PMF at wavevector mismatch k (rad/nm)."""

    @abstractmethod
    def spatial_envelope(self, z: ArrayLike) -> np.ndarray:
        """Spatial transform of the PMF with the carrier removed, centered at z = 0."""

    @property
    @abstractmethod
    def amplitude_coefficient(self) -> float:
        """Proportional coefficient C of the amplitude curve."""

    @property
    def sign_window(self) -> Optional[float]:
        """Half-width Ω (rad/nm) of the sign window applied to achieved PMFs, if any."""
        return None

    @property
    def sign_reference(self) -> Optional[Callable[[np.ndarray], np.ndarray]]:
        """Real PMF whose sign is copied onto achieved PMFs, if any."""
        return None

    def spatial(self, z: ArrayLike) -> np.ndarray:
        """Spatial-domain target Φ(z) with the carrier exp(ik₀z) included."""
        z = np.asarray(z, dtype=float)
        return self.spatial_envelope(z) * np.exp(1j * self.k0 * z)

    def tracking_envelope(self, z: ArrayLike) -> np.ndarray:
        """Real envelope the amplitude curve integrates."""
        return np.real(self.spatial_envelope(z))

    def amplitude_integrand(self, z: ArrayLike) -> np.ndarray:
        """C·envelope re-centered at L/2, the slope of the amplitude curve."""
        z = np.asarray(z, dtype=float)
        return self.amplitude_coefficient * self.tracking_envelope(z - self.length_nm / 2.0)

    def _check_range(self, z: np.ndarray) -> None:
        slack = 1e-9 * self.length_nm
        if np.any(z < -slack) or np.any(z > self.length_nm + slack):
            bad = z[(z < -slack) | (z > self.length_nm + slack)][0]
            raise AmplitudeRangeError(
                f"position {bad:.6g} nm outside the crystal [0, {self.length_nm:.6g}] nm"
            )

    @cached_property
    def _cumulative_table(self) -> Tuple[np.ndarray, np.ndarray, float]:
        nodes = np.linspace(0.0, self.length_nm, TABLE_SEGMENTS + 1)
        probe = np.abs(self.amplitude_integrand(np.linspace(0.0, self.length_nm, 4097)))
        epsabs = 1e-13 * max(float(probe.max()), 1e-300) * (nodes[1] - nodes[0])
        pieces = [
            quad(self.amplitude_integrand, a, b, epsabs=epsabs, epsrel=1e-12, limit=200)[0]
            for a, b in zip(nodes[:-1], nodes[1:])
        ]
        values = np.concatenate(([0.0], np.cumsum(pieces)))
        self.logger.debug(f"Built {self.kind} amplitude table with {nodes.size} nodes")
        return nodes, values, epsabs

    def amplitude_target(self, z: ArrayLike) -> ArrayLike:
        """
        Target field amplitude accumulated from 0 to z.

        Adaptive quadrature from the nearest cached node at or below z.

        Args:
            z (float | np.ndarray): Positions in nm, within [0, L]

        Returns:
            float | np.ndarray: A_target(z)

        Raises:
            AmplitudeRangeError: If any position lies outside [0, L]
        """
        z_arr = np.atleast_1d(np.asarray(z, dtype=float))
        self._check_range(z_arr)
        z_arr = np.clip(z_arr, 0.0, self.length_nm)

        nodes, values, epsabs = self._cumulative_table
        index = np.clip(np.searchsorted(nodes, z_arr, side="right") - 1, 0, nodes.size - 2)
        result = np.empty_like(z_arr)
        for i, (pos, node) in enumerate(zip(z_arr, index)):
            remainder = 0.0
            if pos > nodes[node]:
                remainder = quad(
                    self.amplitude_integrand, nodes[node], pos, epsabs=epsabs, epsrel=1e-12, limit=200
                )[0]
            result[i] = values[node] + remainder

        return float(result[0]) if np.ndim(z) == 0 else result

    def amplitude_table(self, positions: np.ndarray) -> np.ndarray:
        """
        Amplitude curve precomputed at every domain boundary for the tracker.

        Args:
            positions (np.ndarray): Boundary positions j·L_c in nm

        Returns:
            np.ndarray: A_target at each position
        """
        return np.asarray(self.amplitude_target(np.asarray(positions, dtype=float)), dtype=float)

    def forward_transform(self, q: ArrayLike, z: np.ndarray) -> np.ndarray:
        """
        Numerical transform of the spatial envelope back to k-space.

        Args:
            q (float | np.ndarray): Offsets k − k₀ in rad/nm
            z (np.ndarray): Uniform sample positions covering the envelope's support

        Returns:
            np.ndarray: Complex PMF samples at k₀ + q (trapezoid rule)
        """
        q = np.atleast_1d(np.asarray(q, dtype=float))
        envelope = self.spatial_envelope(z)
        kernel = np.exp(-1j * np.outer(q, z))
        return self.forward_norm * trapezoid(kernel * envelope[None, :], z, axis=1)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(k0={self.k0:.6e}, length_nm={self.length_nm:.6g})"
