"""Domain sequences: the signed ferroelectric domains of a poled crystal."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.utils.exceptions import ParameterError


@dataclass(frozen=True, eq=False)
class DomainSequence:
    """Ordered domains g[j] ∈ {+1, −1} with widths in nm.

    Domains are contiguous unless ``starts`` is given. An anchored sequence
    places domain j at its own start position, so a width error moves only
    that domain's far edge; neighbouring domains may overlap or leave a gap.

    Attributes:
        signs (np.ndarray): int8 domain signs, read-only
        widths (np.ndarray): float64 domain widths in nm, read-only
        nominal_width (float): Design domain width L_c in nm
        k0 (float): Carrier wavevector the sequence was designed for, rad/nm
        starts (np.ndarray, optional): float64 start position of each domain in nm, read-only
    """

    signs: np.ndarray
    widths: np.ndarray
    nominal_width: float
    k0: float
    starts: Optional[np.ndarray] = None

    def __post_init__(self):
        signs = np.array(self.signs, dtype=np.int8)
        widths = np.array(self.widths, dtype=np.float64)
        if signs.ndim != 1 or signs.size == 0:
            raise ParameterError("a domain sequence needs at least one domain")
        if widths.shape != signs.shape:
            raise ParameterError(f"{signs.size} signs but {widths.size} widths")
        if not np.all(np.abs(signs) == 1):
            raise ParameterError("domain signs must be exactly +1 or -1")
        if not np.all(widths > 0):
            bad = int(np.argmax(~(widths > 0)))
            raise ParameterError(f"domain {bad + 1} has non-positive width {widths[bad]}")
        if not self.nominal_width > 0 or not self.k0 > 0:
            raise ParameterError("nominal width and carrier k0 must be positive")
        if self.starts is not None:
            starts = np.array(self.starts, dtype=np.float64)
            if starts.shape != signs.shape:
                raise ParameterError(f"{signs.size} signs but {starts.size} start positions")
            if starts[0] < 0 or np.any(np.diff(starts) <= 0):
                raise ParameterError("domain starts must be non-negative and strictly increasing")
            starts.flags.writeable = False
            object.__setattr__(self, "starts", starts)
        signs.flags.writeable = False
        widths.flags.writeable = False
        object.__setattr__(self, "signs", signs)
        object.__setattr__(self, "widths", widths)
        object.__setattr__(self, "nominal_width", float(self.nominal_width))
        object.__setattr__(self, "k0", float(self.k0))

    @property
    def n_domains(self) -> int:
        return int(self.signs.size)

    @property
    def anchored(self) -> bool:
        return self.starts is not None

    @property
    def boundaries(self) -> np.ndarray:
        """Domain boundary positions z_0 = 0, …, z_N = total length of contiguous domains."""
        if self.anchored:
            raise ParameterError("an anchored sequence has no shared boundaries; use domain_starts and domain_ends")
        return np.concatenate(([0.0], np.cumsum(self.widths)))

    @property
    def domain_starts(self) -> np.ndarray:
        if self.anchored:
            return self.starts
        return np.concatenate(([0.0], np.cumsum(self.widths)[:-1]))

    @property
    def domain_ends(self) -> np.ndarray:
        return self.domain_starts + self.widths

    @property
    def total_length(self) -> float:
        if self.anchored:
            return float(self.domain_ends.max())
        return float(self.widths.sum())

    @property
    def is_uniform(self) -> bool:
        return bool(np.all(self.widths == self.nominal_width))

    def flipped(self) -> "DomainSequence":
        """Same domains with every sign reversed."""
        return DomainSequence(-self.signs, self.widths, self.nominal_width, self.k0, self.starts)

    def with_widths(self, widths: np.ndarray, anchored: bool = False) -> "DomainSequence":
        """
        Same signs with new widths.

        Args:
            widths (np.ndarray): New domain widths in nm
            anchored (bool): Keep every domain at its current start instead of
                re-stacking the domains end to end

        Returns:
            DomainSequence: Copy with the new widths
        """
        starts = self.domain_starts if anchored or self.anchored else None
        return DomainSequence(self.signs, widths, self.nominal_width, self.k0, starts)

    def validate_length(self, length_nm: float) -> None:
        """
        Check the sequence fits the crystal.

        Args:
            length_nm (float): Crystal length L in nm

        Raises:
            ParameterError: If Σwidths > L + L_c
        """
        if self.total_length > length_nm + self.nominal_width:
            raise ParameterError(
                f"domains span {self.total_length:.6g} nm, more than L + L_c = "
                f"{length_nm + self.nominal_width:.6g} nm"
            )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DomainSequence):
            return NotImplemented
        return (
            np.array_equal(self.signs, other.signs)
            and np.array_equal(self.widths, other.widths)
            and self.nominal_width == other.nominal_width
            and self.k0 == other.k0
            and self.anchored == other.anchored
            and (not self.anchored or np.array_equal(self.starts, other.starts))
        )

    def __len__(self) -> int:
        return self.n_domains

    def __repr__(self) -> str:
        return (
            f"DomainSequence(n_domains={self.n_domains}, nominal_width={self.nominal_width:.6g}, "
            f"k0={self.k0:.6e}, total_length={self.total_length:.6g})"
        )


def _uniform_sequence(length_nm: float, period_nm: float, alternating: bool) -> DomainSequence:
    if not period_nm > 0:
        raise ParameterError(f"poling period must be positive, got {period_nm}")
    if not length_nm > period_nm:
        raise ParameterError(f"crystal length {length_nm} nm must exceed the period {period_nm} nm")
    domain_width = period_nm / 2.0
    count = int(np.floor(length_nm / domain_width))
    signs = np.where(np.arange(count) % 2 == 0, 1, -1) if alternating else np.ones(count)
    return DomainSequence(signs, np.full(count, domain_width), domain_width, 2.0 * np.pi / period_nm)


def periodic_sequence(length_nm: float, period_nm: float) -> DomainSequence:
    """
    Periodically poled crystal: alternating domains of width Λ/2, starting with +1.

    Args:
        length_nm (float): Crystal length L in nm
        period_nm (float): Poling period Λ in nm

    Returns:
        DomainSequence: floor(L/(Λ/2)) domains
    """
    return _uniform_sequence(length_nm, period_nm, alternating=True)


def unpoled_sequence(length_nm: float, period_nm: float) -> DomainSequence:
    """Unpoled crystal on the same discretization as ``periodic_sequence``."""
    return _uniform_sequence(length_nm, period_nm, alternating=False)


def domain_count(length_nm: float, domain_width: float, count: Optional[int] = None) -> int:
    """Number of whole domains of width L_c fitting in L (or ``count`` if given)."""
    return int(count) if count is not None else int(np.floor(length_nm / domain_width))
