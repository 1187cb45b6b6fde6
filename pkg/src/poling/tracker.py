"""Greedy domain-sign synthesis that follows a target field-amplitude curve."""

from typing import Callable, Union

import numpy as np
import pandas as pd

from src.poling.domains import DomainSequence
from src.poling.pmf import accumulate_field_amplitude, field_amplitude_step
from src.utils.logging import get_logger

logger = get_logger()

TargetAmplitude = Union[Callable[[np.ndarray], np.ndarray], np.ndarray]


def track_domains(
    target_amplitude: TargetAmplitude,
    k0: float,
    domain_width: float,
    n_domains: int,
) -> DomainSequence:
    """
    Choose g[j] ∈ {+1, −1} one domain at a time so the accumulated field amplitude
    stays closest (complex distance) to the target at every boundary j·L_c.

    Ties go to the sign opposite g[j−1], with g[0] taken as −1.

    Args:
        target_amplitude (callable | np.ndarray): A_target evaluated at the
            boundaries, or a function of the boundary positions (nm)
        k0 (float): Carrier wavevector in rad/nm
        domain_width (float): L_c in nm
        n_domains (int): N_d

    Returns:
        DomainSequence: Designed sequence of N_d domains of width L_c
    """
    positions = np.arange(1, n_domains + 1) * domain_width
    if callable(target_amplitude):
        targets = np.asarray(target_amplitude(positions), dtype=complex)
    else:
        targets = np.asarray(target_amplitude, dtype=complex)
    if targets.shape != (n_domains,):
        raise ValueError(f"expected {n_domains} target values, got shape {targets.shape}")

    steps = field_amplitude_step(np.arange(1, n_domains + 1), 1.0, k0, domain_width).tolist()
    wanted = targets.tolist()

    signs = np.empty(n_domains, dtype=np.int8)
    amplitude = 0j
    previous = -1
    for j in range(n_domains):
        plus = amplitude + steps[j]
        minus = amplitude - steps[j]
        d_plus = abs(plus - wanted[j])
        d_minus = abs(minus - wanted[j])
        if d_plus < d_minus:
            sign = 1
        elif d_minus < d_plus:
            sign = -1
        else:
            sign = -previous
        amplitude = plus if sign == 1 else minus
        signs[j] = sign
        previous = sign

    seq = DomainSequence(signs, np.full(n_domains, domain_width), domain_width, k0)

    achieved = accumulate_field_amplitude(signs, k0, domain_width)
    worst = float(np.max(np.abs(achieved - targets)))
    step = float(abs(steps[0]))
    if worst > 3.0 * step:
        logger.warning(
            f"Tracker could not follow the target: max deviation {worst:.4g} "
            f"exceeds 3 domain steps ({step:.4g}); the target slope is too steep"
        )
    logger.info(f"Tracked {n_domains} domains, max amplitude deviation {worst:.4g}")
    return seq


def amplitude_trace(seq: DomainSequence, targets: np.ndarray) -> pd.DataFrame:
    """
    Target and achieved field amplitude at every domain boundary.

    Args:
        seq (DomainSequence): Uniform designed sequence
        targets (np.ndarray): A_target at j·L_c, j = 1..N_d

    Returns:
        pd.DataFrame: Columns z_nm, target, achieved_real, achieved_imag, sign
    """
    achieved = accumulate_field_amplitude(seq.signs, seq.k0, seq.nominal_width)
    return pd.DataFrame(
        {
            "z_nm": np.arange(1, seq.n_domains + 1) * seq.nominal_width,
            "target": np.real(np.asarray(targets)),
            "achieved_real": achieved.real,
            "achieved_imag": achieved.imag,
            "sign": seq.signs.astype(int),
        }
    )
