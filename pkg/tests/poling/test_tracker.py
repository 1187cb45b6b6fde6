import numpy as np
import pytest

from src.poling import achieved_pmf, amplitude_trace, periodic_sequence, track_domains
from src.poling.pmf import accumulate_field_amplitude, field_amplitude_step
from src.targets import HermiteGaussTarget

PERIOD = 16038.0
LC = PERIOD / 2
K0 = 2 * np.pi / PERIOD


def test_reproduces_an_achievable_target():
    signs = periodic_sequence(60 * LC + 1.0, PERIOD).signs
    targets = accumulate_field_amplitude(signs, K0, LC)
    seq = track_domains(targets, K0, LC, signs.size)
    np.testing.assert_array_equal(seq.signs, signs)
    assert seq.is_uniform and seq.nominal_width == LC


def test_first_tie_goes_to_plus():
    seq = track_domains(np.zeros(6), K0, LC, 6)
    assert seq.signs[0] == 1


def test_callable_and_table_agree():
    target = HermiteGaussTarget(K0, 2.0e6, order=2)
    n = int(2.0e6 // LC)
    positions = np.arange(1, n + 1) * LC
    from_table = track_domains(target.amplitude_table(positions), K0, LC, n)
    from_callable = track_domains(target.amplitude_target, K0, LC, n)
    assert from_table == from_callable


def test_wrong_table_length():
    with pytest.raises(ValueError):
        track_domains(np.zeros(5), K0, LC, 6)


@pytest.fixture(scope="module")
def hermite_design():
    target = HermiteGaussTarget(K0, 2.0e6, order=2)
    n = int(2.0e6 // LC)
    targets = target.amplitude_table(np.arange(1, n + 1) * LC)
    return target, targets, track_domains(targets, K0, LC, n)


def test_follows_hermite_gauss_amplitude(hermite_design):
    _, targets, seq = hermite_design
    achieved = accumulate_field_amplitude(seq.signs, K0, LC)
    step = abs(field_amplitude_step(1, 1, K0, LC))
    assert np.max(np.abs(achieved - targets)) <= step * (1 + 1e-9)


def test_hermite_gauss_design_reproduces_target_shape(hermite_design):
    target, _, seq = hermite_design
    k = K0 + np.linspace(-4, 4, 801) / target.sigma
    achieved = achieved_pmf(seq, k, omega=target.sign_window).amplitude
    wanted = target.pmf(k)
    overlap = achieved @ wanted / (np.linalg.norm(achieved) * np.linalg.norm(wanted))
    assert overlap > 0.95
    assert achieved[400] < 0


def test_amplitude_trace_columns(hermite_design):
    _, targets, seq = hermite_design
    trace = amplitude_trace(seq, targets)
    assert list(trace.columns) == ["z_nm", "target", "achieved_real", "achieved_imag", "sign"]
    assert len(trace) == seq.n_domains
    assert trace["z_nm"].iloc[-1] == pytest.approx(seq.n_domains * LC)
