"""Shared fixtures: dispersion models, reference sequences and small grids."""

import numpy as np
import pytest

from src.biphoton import PumpSpec, SpectralGrid
from src.dispersion import ConstantIndexModel, LNSchlarbModel
from src.dispersion.phase_matching import solve_poling_period
from src.poling import periodic_sequence
from src.utils.config import reset_config

PUMP_NM = 1603.8
DEGENERATE_NM = 3207.6


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    """Isolate every test from the caller's environment and the config singleton."""
    for name in ("CONFIG_PATH", "OUTPUT_DIRECTORY", "LOG_LEVEL", "LOG_FILE", "QPM_THREADS"):
        monkeypatch.delenv(name, raising=False)
    reset_config()
    yield
    reset_config()


@pytest.fixture(scope="session")
def schlarb():
    return LNSchlarbModel()


@pytest.fixture(scope="session")
def constant_model():
    # birefringent but dispersion-free: Λ = λ_s/0.2 at degeneracy
    return ConstantIndexModel(n_o=2.2, n_e=2.0)


@pytest.fixture(scope="session")
def model_period(schlarb):
    return solve_poling_period(schlarb, PUMP_NM, DEGENERATE_NM, DEGENERATE_NM)


@pytest.fixture(scope="session")
def short_crystal(model_period):
    """Periodically poled 2 mm crystal phase matched at degeneracy."""
    return periodic_sequence(2.0e6, model_period)


@pytest.fixture(scope="session")
def small_grid():
    return SpectralGrid(64, DEGENERATE_NM, 240.0)


@pytest.fixture(scope="session")
def pump():
    return PumpSpec(PUMP_NM, 2.5)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(key=1234))
