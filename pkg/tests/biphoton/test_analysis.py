import numpy as np
import pytest

from src.biphoton import (
    JSAGrid,
    SpectralGrid,
    antidiagonal_profile,
    assemble_jsa,
    hom_features,
    hom_scan,
    jta_from_jsa,
    schmidt_decomposition,
)
from src.poling import achieved_pmf
from src.biphoton import covering_k_grid, mismatch_grid
from src.utils.exceptions import GridRangeError


@pytest.fixture(scope="module")
def grid():
    return SpectralGrid(64, 3207.6, 240.0)


def normalized(grid, amplitude):
    return JSAGrid(grid, np.asarray(amplitude, dtype=complex), normalized=False).normalize()


def gaussian(grid, width=5.0):
    idx = np.arange(grid.size) - grid.size // 2
    g = np.exp(-(idx**2) / (2 * width**2))
    return np.outer(g, g)


def test_separable_state_has_unit_schmidt_number(grid):
    result = schmidt_decomposition(normalized(grid, gaussian(grid)))
    assert result.schmidt_number == pytest.approx(1.0, rel=1e-9)
    assert result.weights[0] == pytest.approx(1.0)


def test_two_mode_state(grid):
    amplitude = np.zeros((64, 64))
    amplitude[3, 7] = np.sqrt(0.75)
    amplitude[20, 50] = np.sqrt(0.25)
    result = schmidt_decomposition(normalized(grid, amplitude))
    assert result.schmidt_number == pytest.approx(1 / (0.75**2 + 0.25**2))
    np.testing.assert_allclose(result.top(2), [0.75, 0.25])
    assert result.weights.sum() == pytest.approx(1.0)


def test_diagonal_correlation_raises_schmidt_number(grid):
    idx = np.arange(64) - 32
    sum_axis = np.exp(-((idx[:, None] + idx[None, :]) ** 2) / (2 * 1.5**2))
    diff_axis = np.exp(-((idx[:, None] - idx[None, :]) ** 2) / (2 * 12.0**2))
    result = schmidt_decomposition(normalized(grid, sum_axis * diff_axis))
    assert result.schmidt_number > 3


def test_second_order_hermite_gauss_state_has_three_modes():
    # HG-2 across the anti-diagonal times a Gaussian of the same width along it: weights 1/2, 1/4, 1/4
    grid = SpectralGrid(128, 3207.6, 240.0)
    idx = np.arange(128) - 64
    u = (idx[:, None] - idx[None, :]) / np.sqrt(2) / 6.0
    v = (idx[:, None] + idx[None, :]) / np.sqrt(2) / 6.0
    amplitude = (4 * u**2 - 2) * np.exp(-(u**2 + v**2) / 2)
    result = schmidt_decomposition(normalized(grid, amplitude))
    assert result.schmidt_number == pytest.approx(8 / 3, rel=1e-6)
    np.testing.assert_allclose(result.top(3), [0.5, 0.25, 0.25], atol=1e-6)


def test_jta_preserves_norm(grid):
    jsa = normalized(grid, gaussian(grid) * np.exp(1j * np.arange(64) / 5.0)[:, None])
    jta = jta_from_jsa(jsa)
    assert np.sum(np.abs(jta.amplitude) ** 2) * jta.d_time**2 == pytest.approx(1.0)
    assert jta.d_time == pytest.approx(grid.d_time)


def test_jta_of_centred_gaussian_peaks_at_zero_time(grid):
    jta = jta_from_jsa(normalized(grid, gaussian(grid)))
    peak = np.unravel_index(np.argmax(np.abs(jta.amplitude)), jta.amplitude.shape)
    assert peak == (32, 32)


def test_hom_dip_and_edges(grid):
    jsa = normalized(grid, gaussian(grid))
    taus = np.linspace(-20 * grid.d_time, 20 * grid.d_time, 41)
    p = hom_scan(jsa, taus, chunk=7)
    assert p[20] == pytest.approx(0.0, abs=1e-12)
    assert p[0] == pytest.approx(0.5, abs=1e-3)
    np.testing.assert_allclose(p, p[::-1], atol=1e-12)
    assert np.all(p >= -1e-12) and np.all(p <= 1 + 1e-12)

    features = hom_features(taus, p)
    assert features["dip"] == pytest.approx(0.0, abs=1e-12)
    assert features["visibility"] == pytest.approx(1.0, abs=1e-3)
    assert set(features) == {"dip", "visibility", "fringe_count", "edge_value"}


def test_hom_of_frequency_entangled_comb_shows_fringes(grid):
    amplitude = np.zeros((64, 64))
    for offset in (-8, 8):
        amplitude += np.outer(np.exp(-((np.arange(64) - 32 - offset) ** 2) / 2.0), np.exp(-((np.arange(64) - 32 + offset) ** 2) / 2.0))
    jsa = normalized(grid, amplitude)
    taus = np.linspace(0, 8 * grid.d_time, 400)
    p = hom_scan(jsa, taus)
    features = hom_features(taus, p)
    assert features["fringe_count"] >= 2
    assert p.max() > 0.9


def test_antidiagonal_profile():
    data = np.arange(16).reshape(4, 4)
    np.testing.assert_array_equal(antidiagonal_profile(data), [7, 10, 13])
    np.testing.assert_array_equal(antidiagonal_profile(data, offset=-1), [3, 6, 9, 12])
    np.testing.assert_array_equal(antidiagonal_profile(data, offset=2), [15])


@pytest.mark.parametrize("data, offset", [(np.zeros((3, 4)), 0), (np.zeros((4, 4)), 3), (np.zeros((4, 4)), -5)])
def test_antidiagonal_profile_rejects(data, offset):
    with pytest.raises(GridRangeError):
        antidiagonal_profile(data, offset)


def test_periodic_crystal_state(schlarb, small_grid, pump, short_crystal):
    mismatch = mismatch_grid(schlarb, small_grid)
    pmf = achieved_pmf(short_crystal, covering_k_grid(mismatch, 512))
    jsa = assemble_jsa(pmf, pump, small_grid, schlarb, mismatch=mismatch)
    assert jsa.norm == pytest.approx(1.0)
    assert schmidt_decomposition(jsa).schmidt_number >= 1.0 - 1e-9
    assert hom_scan(jsa, np.array([0.0]))[0] == pytest.approx(0.0, abs=1e-12)
