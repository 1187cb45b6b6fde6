"""Poling engine: domain sequences, PMF reconstruction and amplitude tracking."""

from src.poling.domains import DomainSequence, periodic_sequence, unpoled_sequence
from src.poling.pmf import (
    AchievedPMF,
    achieved_pmf,
    domain_step_contribution,
    field_amplitude_step,
    transfer_function,
)
from src.poling.tracker import amplitude_trace, track_domains

__all__ = [
    "AchievedPMF",
    "DomainSequence",
    "achieved_pmf",
    "amplitude_trace",
    "domain_step_contribution",
    "field_amplitude_step",
    "periodic_sequence",
    "track_domains",
    "transfer_function",
    "unpoled_sequence",
]
