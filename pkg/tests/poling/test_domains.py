import numpy as np
import pytest

from src.poling import DomainSequence, periodic_sequence, unpoled_sequence
from src.poling.domains import domain_count
from src.utils.exceptions import ParameterError

LC = 7499.45
K0 = np.pi / LC


def test_periodic_sequence_alternates_from_plus():
    seq = periodic_sequence(1.0e5, 2 * LC)
    assert seq.n_domains == int(np.floor(1.0e5 / LC))
    np.testing.assert_array_equal(seq.signs[:4], [1, -1, 1, -1])
    assert seq.is_uniform
    assert seq.k0 == pytest.approx(K0)
    assert seq.total_length <= 1.0e5


def test_unpoled_sequence_has_one_sign():
    seq = unpoled_sequence(1.0e5, 2 * LC)
    assert np.all(seq.signs == 1)
    assert seq.n_domains == periodic_sequence(1.0e5, 2 * LC).n_domains


def test_boundaries_are_cumulative_widths():
    seq = DomainSequence([1, -1, 1], [1.0, 2.0, 3.0], 2.0, K0)
    np.testing.assert_array_equal(seq.boundaries, [0.0, 1.0, 3.0, 6.0])
    assert len(seq) == 3
    assert not seq.is_uniform


def test_anchored_domains_keep_their_starts():
    seq = DomainSequence([1, -1, 1], [2.0, 2.0, 2.0], 2.0, K0)
    anchored = seq.with_widths([1.5, 2.5, 2.0], anchored=True)
    assert anchored.anchored and not seq.anchored
    np.testing.assert_array_equal(anchored.domain_starts, [0.0, 2.0, 4.0])
    np.testing.assert_array_equal(anchored.domain_ends, [1.5, 4.5, 6.0])
    assert anchored.total_length == 6.0
    assert anchored.flipped().anchored
    assert anchored != seq.with_widths([1.5, 2.5, 2.0])
    with pytest.raises(ParameterError):
        anchored.boundaries


@pytest.mark.parametrize("starts", [[0.0, 2.0], [0.0, 2.0, 2.0], [-1.0, 2.0, 4.0]])
def test_invalid_domain_starts(starts):
    with pytest.raises(ParameterError):
        DomainSequence([1, -1, 1], [2.0] * 3, 2.0, K0, starts)


def test_arrays_are_read_only():
    seq = DomainSequence([1, -1], [LC, LC], LC, K0)
    with pytest.raises(ValueError):
        seq.signs[0] = -1
    with pytest.raises(ValueError):
        seq.widths[0] = 1.0


def test_flipped_and_equality():
    seq = DomainSequence([1, -1, -1], [LC] * 3, LC, K0)
    assert seq.flipped() == DomainSequence([-1, 1, 1], [LC] * 3, LC, K0)
    assert seq.flipped().flipped() == seq
    assert seq != seq.with_widths([LC, LC, LC + 1])


@pytest.mark.parametrize(
    "signs, widths",
    [
        ([], []),
        ([1, 0], [LC, LC]),
        ([1, 2], [LC, LC]),
        ([1, -1], [LC]),
        ([1, -1], [LC, 0.0]),
        ([1, -1], [LC, -5.0]),
    ],
)
def test_invalid_sequences(signs, widths):
    with pytest.raises(ParameterError):
        DomainSequence(signs, widths, LC, K0)


def test_validate_length():
    seq = DomainSequence([1] * 10, [LC] * 10, LC, K0)
    seq.validate_length(9 * LC)
    with pytest.raises(ParameterError):
        seq.validate_length(8 * LC)


def test_period_must_fit_crystal():
    with pytest.raises(ParameterError):
        periodic_sequence(1.0e3, 2 * LC)
    with pytest.raises(ParameterError):
        periodic_sequence(1.0e5, -1.0)


def test_domain_count():
    assert domain_count(3.0e7, 7499.45) == 4000
    assert domain_count(3.0e7, 7499.45, count=12) == 12
