"""Source-level studies: pair-generation rate and fabrication tolerance."""

from src.studies.pair_rate import RateParams, RateReport, miller_scaled_deff, pair_rate, transfer_integral
from src.studies.tolerance import (
    SchmidtPipeline,
    ToleranceReport,
    offset_sequence,
    offset_study,
    perturb_sequence,
    schmidt_statistics,
)

__all__ = [
    "RateParams",
    "RateReport",
    "SchmidtPipeline",
    "ToleranceReport",
    "miller_scaled_deff",
    "offset_sequence",
    "offset_study",
    "pair_rate",
    "perturb_sequence",
    "schmidt_statistics",
    "transfer_integral",
]
