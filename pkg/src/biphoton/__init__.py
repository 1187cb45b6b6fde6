"""Biphoton state: JSA assembly and its temporal, interference and Schmidt analyses."""

from src.biphoton.analysis import (
    JTAGrid,
    SchmidtResult,
    antidiagonal_profile,
    hom_features,
    hom_scan,
    jta_from_jsa,
    schmidt_decomposition,
)
from src.biphoton.jsa import (
    JSAGrid,
    assemble_jsa,
    check_span,
    covering_k_grid,
    edge_fraction,
    jsa_centroid,
    mismatch_grid,
)
from src.biphoton.spectral import PumpSpec, SpectralGrid, pump_envelope

__all__ = [
    "JSAGrid",
    "JTAGrid",
    "PumpSpec",
    "SchmidtResult",
    "SpectralGrid",
    "antidiagonal_profile",
    "assemble_jsa",
    "check_span",
    "covering_k_grid",
    "edge_fraction",
    "hom_features",
    "hom_scan",
    "jsa_centroid",
    "jta_from_jsa",
    "mismatch_grid",
    "pump_envelope",
    "schmidt_decomposition",
]
