import numpy as np
import pytest
from scipy.constants import c as SPEED_OF_LIGHT
from scipy.integrate import simpson

from src.dispersion.phase_matching import phase_mismatch
from src.poling import DomainSequence, periodic_sequence, unpoled_sequence
from src.studies import RateParams, miller_scaled_deff, pair_rate, perturb_sequence, transfer_integral
from src.utils.exceptions import ConvergenceError, ParameterError

PUMP_NM = 1603.8


def omega_of(nm):
    return 2 * np.pi * SPEED_OF_LIGHT / (nm * 1e-9)


@pytest.fixture(scope="module")
def params():
    return RateParams(length_nm=2.0e6)


@pytest.fixture(scope="module")
def periodic_report(short_crystal, params, schlarb):
    return pair_rate(short_crystal, params, schlarb)


def test_pump_field_amplitude():
    assert RateParams().field_amplitude == pytest.approx(4666.7, rel=1e-3)


def test_rate_params_validation():
    with pytest.raises(ParameterError):
        RateParams(pump_power_w=0.0)
    with pytest.raises(ParameterError):
        RateParams(n_signal=-2.1)
    assert RateParams(d_eff_pm_per_v=0.0).prefactor == 0.0


def test_rate_params_from_model(schlarb):
    params = RateParams.from_model(schlarb, PUMP_NM, pump_power_w=2e-3)
    assert params.pump_power_w == 2e-3
    assert params.n_signal == pytest.approx(schlarb.refractive_index("o", 2 * PUMP_NM))
    assert params.n_idler == pytest.approx(schlarb.refractive_index("e", 2 * PUMP_NM))
    assert params.ng_idler == pytest.approx(schlarb.group_index("e", 2 * PUMP_NM))


def test_miller_scaling(schlarb):
    same = miller_scaled_deff(-4.6, (1064.0, 2128.0, 2128.0), (1064.0, 2128.0, 2128.0), schlarb)
    assert same == -4.6

    scaled = miller_scaled_deff(-4.6, (532.0, 1064.0, 1064.0), (PUMP_NM, 3207.6, 3207.6), schlarb)
    chi = lambda pol, nm: schlarb.refractive_index(pol, nm) ** 2 - 1
    expected = -4.6 * (
        chi("o", PUMP_NM) / chi("o", 532.0) * chi("o", 3207.6) / chi("o", 1064.0) * chi("e", 3207.6) / chi("e", 1064.0)
    )
    assert scaled == pytest.approx(expected)
    assert -4.6 < scaled < 0

    with pytest.raises(ParameterError):
        miller_scaled_deff(-4.6, (532.0, 1064.0), (PUMP_NM, 3207.6, 3207.6), schlarb)


def test_transfer_integral_matches_domain_exponentials(short_crystal, schlarb):
    signal_nm = np.array([3150.0, 3207.6, 3260.0])
    omega_s = omega_of(signal_nm)
    idler_nm = 1 / (1 / PUMP_NM - 1 / signal_nm)
    k = phase_mismatch(schlarb, PUMP_NM, signal_nm, idler_nm)

    z = short_crystal.boundaries
    g = short_crystal.signs
    expected = [
        np.sum(g * (np.exp(-1j * kk * z[1:]) - np.exp(-1j * kk * z[:-1])) / (-1j * kk)) * 1e-9 for kk in k
    ]
    np.testing.assert_allclose(
        transfer_integral(short_crystal, omega_s, PUMP_NM, schlarb),
        expected,
        rtol=1e-8,
        atol=1e-6 * np.max(np.abs(expected)),
    )


SPOT_SIGNAL_NM = np.linspace(3000.0, 3400.0, 11)


def spot_mismatch(model):
    idler_nm = 1 / (1 / PUMP_NM - 1 / SPOT_SIGNAL_NM)
    return phase_mismatch(model, PUMP_NM, SPOT_SIGNAL_NM, idler_nm)


def brute_force_transfer(seq, k, points=10**6):
    """Per-domain Simpson quadrature of χ̄(z)exp(−ikz) on ~``points`` samples, in m."""
    per_domain = 2 * (points // (2 * seq.n_domains))
    z = seq.domain_starts[:, None] + seq.widths[:, None] * np.linspace(0.0, 1.0, per_domain + 1)[None, :]
    phase = k * z
    real = simpson(seq.signs[:, None] * np.cos(phase), x=z, axis=1)
    imag = simpson(-seq.signs[:, None] * np.sin(phase), x=z, axis=1)
    return (real.sum() + 1j * imag.sum()) * 1e-9


@pytest.mark.parametrize("resolution", [0.0, 300.0])
def test_transfer_integral_matches_brute_force_quadrature(short_crystal, schlarb, resolution):
    seq = perturb_sequence(short_crystal, resolution, seed=4)
    expected = np.array([brute_force_transfer(seq, kk) for kk in spot_mismatch(schlarb)])
    actual = transfer_integral(seq, omega_of(SPOT_SIGNAL_NM), PUMP_NM, schlarb)
    np.testing.assert_allclose(actual, expected, rtol=1e-6, atol=1e-6 * np.max(np.abs(expected)))


def test_transfer_integral_is_linear_under_concatenation(short_crystal, schlarb):
    first = short_crystal
    ripple = 1.0 + 0.02 * np.sin(np.arange(120))
    second = DomainSequence(-first.signs[:120], first.widths[:120] * ripple, first.nominal_width, first.k0)
    joined = DomainSequence(
        np.concatenate((first.signs, second.signs)),
        np.concatenate((first.widths, second.widths)),
        first.nominal_width,
        first.k0,
    )
    omega_s = omega_of(SPOT_SIGNAL_NM)
    shift = np.exp(-1j * spot_mismatch(schlarb) * first.total_length)
    expected = transfer_integral(first, omega_s, PUMP_NM, schlarb) + shift * transfer_integral(
        second, omega_s, PUMP_NM, schlarb
    )
    actual = transfer_integral(joined, omega_s, PUMP_NM, schlarb)
    np.testing.assert_allclose(actual, expected, rtol=1e-8, atol=1e-8 * np.max(np.abs(expected)))


def test_transfer_integral_zero_outside_window(short_crystal, schlarb):
    low, high = schlarb.window_nm
    omega_s = omega_of(np.array([1.5 * high, 3207.6]))
    values = transfer_integral(short_crystal, omega_s, PUMP_NM, schlarb)
    assert values[0] == 0
    assert abs(values[1]) > 0


def test_transfer_integral_rejects_frequencies_above_pump(short_crystal, schlarb):
    with pytest.raises(ParameterError):
        transfer_integral(short_crystal, np.array([omega_of(PUMP_NM) * 1.01]), PUMP_NM, schlarb)


def test_periodic_rate_report(periodic_report, params):
    assert periodic_report.converged
    assert periodic_report.rate_per_s > 0
    assert periodic_report.rate_per_s_per_mw == pytest.approx(periodic_report.rate_per_s / (params.pump_power_w * 1e3))
    low, high = periodic_report.band_nm
    assert low < 3207.6 < high
    assert periodic_report.quadrature_points > 4096
    assert set(periodic_report.to_dict()) == {"rate_per_s_per_mW", "band_nm", "quadrature_points", "converged"}


def test_rate_is_linear_in_power(short_crystal, params, schlarb, periodic_report):
    doubled = pair_rate(short_crystal, params.replace(pump_power_w=2 * params.pump_power_w), schlarb)
    assert doubled.rate_per_s == pytest.approx(2 * periodic_report.rate_per_s, rel=1e-12)
    assert doubled.rate_per_s_per_mw == pytest.approx(periodic_report.rate_per_s_per_mw, rel=1e-12)


def test_rate_is_quadratic_in_deff(short_crystal, params, schlarb, periodic_report):
    halved = pair_rate(short_crystal, params.replace(d_eff_pm_per_v=params.d_eff_pm_per_v / 2), schlarb)
    assert halved.rate_per_s == pytest.approx(periodic_report.rate_per_s / 4, rel=1e-12)
    flipped = pair_rate(short_crystal, params.replace(d_eff_pm_per_v=-params.d_eff_pm_per_v), schlarb)
    assert flipped.rate_per_s == pytest.approx(periodic_report.rate_per_s, rel=1e-12)


def test_rate_ignores_global_sign(short_crystal, params, schlarb, periodic_report):
    assert pair_rate(short_crystal.flipped(), params, schlarb).rate_per_s == pytest.approx(
        periodic_report.rate_per_s, rel=1e-12
    )


def test_unpoled_crystal_is_dark(model_period, params, schlarb, periodic_report):
    unpoled = unpoled_sequence(2.0e6, model_period)
    assert pair_rate(unpoled, params, schlarb).rate_per_s < 0.01 * periodic_report.rate_per_s


def test_non_convergence_reports_diagnostics(short_crystal, params, schlarb):
    with pytest.raises(ConvergenceError) as info:
        pair_rate(short_crystal, params, schlarb, max_doublings=0)
    diagnostics = info.value.diagnostics
    assert diagnostics["points"] == [4097]
    assert len(diagnostics["estimates"]) == 1
    assert info.value.kind == "not_converged"


def test_longer_crystal_generates_more_pairs(model_period, params, schlarb, periodic_report):
    longer = periodic_sequence(4.0e6, model_period)
    report = pair_rate(longer, params.replace(length_nm=4.0e6), schlarb)
    assert report.rate_per_s > 1.5 * periodic_report.rate_per_s
