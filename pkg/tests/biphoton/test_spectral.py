import numpy as np
import pytest

from src.biphoton import PumpSpec, SpectralGrid, pump_envelope
from src.dispersion.phase_matching import omega_from_wavelength
from src.utils.exceptions import ParameterError


def test_grid_centre_sits_at_half_size():
    grid = SpectralGrid(512, 3207.6, 240.0)
    assert grid.wavelengths[256] == pytest.approx(3207.6)
    assert grid.d_lambda == pytest.approx(240.0 / 512)
    assert grid.wavelengths[0] == pytest.approx(3207.6 - 120.0)
    assert np.all(np.diff(grid.omegas) < 0)
    np.testing.assert_array_equal(grid.signal_nm, grid.idler_nm)


def test_conjugate_time_grid():
    grid = SpectralGrid(64, 3207.6, 240.0)
    assert grid.d_time * grid.size * grid.d_omega == pytest.approx(2 * np.pi)
    assert grid.times[32] == 0.0
    assert grid.times.size == 64


def test_centre_step_matches_exact_frequencies():
    grid = SpectralGrid(1024, 3207.6, 20.0)
    exact = -np.diff(grid.omegas)[511]
    assert grid.d_omega == pytest.approx(exact, rel=1e-4)


@pytest.mark.parametrize("size", [0, 3, 100, 2])
def test_grid_size_must_be_power_of_two(size):
    with pytest.raises(ParameterError):
        SpectralGrid(size, 3207.6, 240.0)


def test_grid_span_must_stay_positive():
    with pytest.raises(ParameterError):
        SpectralGrid(64, 100.0, 200.0)
    with pytest.raises(ParameterError):
        SpectralGrid(64, 3207.6, -1.0)


def test_scaled_grid():
    grid = SpectralGrid(64, 3207.6, 240.0).scaled(size=128)
    assert grid.size == 128 and grid.span_nm == 240.0


def test_pump_duration_and_width():
    pump = PumpSpec(1603.8, 2.5)
    assert pump.duration_fs == pytest.approx(1514, rel=2e-3)
    assert pump.sigma_omega == pytest.approx(pump.fwhm_omega / (2 * np.sqrt(np.log(2))))
    assert pump.omega0 == pytest.approx(float(omega_from_wavelength(1603.8)))


def test_pump_envelope_intensity_fwhm():
    pump = PumpSpec(1603.8, 2.5)
    assert pump_envelope(pump, pump.omega0) == pytest.approx(1.0)
    half = pump_envelope(pump, pump.omega0 + pump.fwhm_omega / 2)
    assert half**2 == pytest.approx(0.5)
    assert pump_envelope(pump, pump.omega0 - 1e-3) == pytest.approx(pump_envelope(pump, pump.omega0 + 1e-3))


@pytest.mark.parametrize("kwargs", [{"fwhm_nm": 0.0}, {"center_nm": -1.0}])
def test_invalid_pump(kwargs):
    with pytest.raises(ParameterError):
        PumpSpec(**kwargs)
