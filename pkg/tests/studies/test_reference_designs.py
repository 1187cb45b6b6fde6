"""Full-size 30 mm designs; deselected by default (run with ``-m reference``)."""

import numpy as np
import pytest
from scipy.constants import c as SPEED_OF_LIGHT

from src.biphoton import SpectralGrid, antidiagonal_profile, jta_from_jsa
from src.pipeline import DesignRun
from src.poling import achieved_pmf, periodic_sequence, transfer_function, unpoled_sequence
from src.studies import SchmidtPipeline, pair_rate
from src.utils.config import RunConfig
from src.utils.helpers import count_extrema, count_peaks

pytestmark = [pytest.mark.reference, pytest.mark.slow]

PUMP_NM = 1603.8
DEGENERATE_NM = 3207.6
# pairs/s/mW of the periodic crystal, the HG-2 design and the ten-tooth comb
QUOTED_RATES = {"periodic": 6448.0, "hermite_gauss": 875.0, "comb": 371.0}
QUOTED_OFFSET_K = [10.0389, 10.1502, 10.2998]


def design_run(path, **sections):
    config = RunConfig().with_overrides(**sections) if sections else RunConfig()
    run = DesignRun(config, output_dir=str(path))
    run.design()
    return run


@pytest.fixture(scope="module")
def comb_run(tmp_path_factory):
    return design_run(tmp_path_factory.mktemp("comb"))


@pytest.fixture(scope="module")
def hg_run(tmp_path_factory):
    return design_run(tmp_path_factory.mktemp("hg"), target={"kind": "hermite_gauss", "order": 2})


@pytest.fixture(scope="module")
def comb_tolerance(tmp_path_factory):
    # 512 cells over the default span: K moves by ~1e-5 against 1024
    return design_run(tmp_path_factory.mktemp("comb_tolerance"), grid={"size": 512}).tolerance()


@pytest.fixture(scope="module")
def rates(comb_run, hg_run):
    params = comb_run.rate_params()
    length, period = params.length_nm, comb_run.period_nm
    return {
        "periodic": pair_rate(periodic_sequence(length, period), params, comb_run.model).rate_per_s_per_mw,
        "unpoled": pair_rate(unpoled_sequence(length, period), params, comb_run.model).rate_per_s_per_mw,
        "hermite_gauss": hg_run.rate()["rate_per_s_per_mW"],
        "comb": comb_run.rate()["rate_per_s_per_mW"],
    }


def test_ten_tooth_comb(comb_run):
    comb = comb_run.target
    k = comb.k0 + np.linspace(-6, 6, 6001) * comb.spacing
    assert count_peaks(np.abs(transfer_function(comb_run.sequence, k)), 0.2) == 10


def test_second_order_hermite_gauss_shape(hg_run):
    target = hg_run.target
    k = target.k0 + np.linspace(-4, 4, 801) / target.sigma
    achieved = achieved_pmf(hg_run.sequence, k, omega=target.sign_window).amplitude
    wanted = target.pmf(k)
    assert achieved @ wanted / (np.linalg.norm(achieved) * np.linalg.norm(wanted)) > 0.98


def test_hermite_gauss_schmidt_number_matches_its_target(hg_run, tmp_path):
    designed = hg_run.schmidt()["K"]
    ideal = DesignRun(hg_run.config, output_dir=str(tmp_path), ideal=True).schmidt()["K"]
    assert designed == pytest.approx(ideal, rel=0.01)
    # three Schmidt modes with weights near (1/4, 1/2, 1/4): K ≈ 8/3
    assert 2.6 < designed < 2.8


def test_hermite_gauss_has_three_lobes(hg_run):
    jsa = hg_run.jsa_grid
    assert count_extrema(antidiagonal_profile(jsa.amplitude.real)) == 3
    jta = jta_from_jsa(jsa)
    assert count_extrema(antidiagonal_profile(np.abs(jta.amplitude))) == 3


def test_comb_hom_trace_beats(comb_run, hg_run):
    comb, hermite_gauss = comb_run.hom(), hg_run.hom()
    for features in (comb, hermite_gauss):
        assert features["dip"] < 1e-3
        assert 0.495 <= features["edge_value"] <= 0.505
    assert hermite_gauss["fringe_count"] >= 1
    assert comb["fringe_count"] >= 3 * hermite_gauss["fringe_count"]


def test_grid_doubling_keeps_schmidt_number(comb_run):
    numbers = []
    for size in (512, 1024):
        grid = SpectralGrid(size, DEGENERATE_NM, comb_run.config.grid.span_nm)
        pipeline = SchmidtPipeline(comb_run.model, grid, comb_run.pump, comb_run.config.grid.pmf_points)
        numbers.append(pipeline(comb_run.sequence))
    assert numbers[1] == pytest.approx(numbers[0], rel=0.01)


def test_width_offsets_barely_change_the_comb(comb_tolerance):
    offsets = comb_tolerance["offsets"]
    assert [row["offset_nm"] for row in offsets] == [100.0, 0.0, -100.0]
    numbers = [row["schmidt_number"] for row in offsets]
    assert numbers == pytest.approx(QUOTED_OFFSET_K, abs=0.3)
    assert numbers[0] < numbers[1] < numbers[2]


def test_random_widths_keep_mean_schmidt_number(comb_tolerance):
    summary = comb_tolerance["summary"]
    assert [row["R_nm"] for row in summary] == [0.0, 50.0, 100.0, 200.0, 400.0]
    assert all(row["repetitions"] == 100 for row in summary)
    means = np.array([row["mean_K"] for row in summary])
    sds = [row["sd_K"] for row in summary]
    assert np.max(np.abs(means - means[0])) < 0.5
    assert sds[0] == 0.0
    assert all(low < high for low, high in zip(sds, sds[1:]))


def test_fabrication_error_spreads_hermite_gauss(tmp_path):
    run = design_run(
        tmp_path,
        target={"kind": "hermite_gauss", "order": 2},
        grid={"size": 512},
        tolerance={"resolutions_nm": (0.0, 100.0, 400.0), "repetitions": 10, "offsets_nm": (0.0,)},
    )
    sds = [row["sd_K"] for row in run.tolerance()["summary"]]
    assert sds[0] == 0.0
    assert sds[0] < sds[1] < sds[2]


def test_periodic_rate_matches_sinc_estimate(comb_run, rates):
    params = comb_run.rate_params()
    model = comb_run.model
    walk_off = abs(model.group_index("o", DEGENERATE_NM) - model.group_index("e", DEGENERATE_NM))
    length_m = periodic_sequence(params.length_nm, comb_run.period_nm).total_length * 1e-9
    omega_0 = np.pi * SPEED_OF_LIGHT / (PUMP_NM * 1e-9)
    # first-order grating: ∫|T|²dω = (2/π)²L²·2πc/(L·Δn_g)
    estimate = params.prefactor * omega_0**2 * 8.0 * SPEED_OF_LIGHT * length_m / (np.pi * walk_off)
    assert rates["periodic"] == pytest.approx(estimate / (params.pump_power_w * 1e3), rel=0.03)


def test_rate_ratios_follow_quoted_table(rates):
    quoted = QUOTED_RATES
    assert rates["periodic"] / rates["hermite_gauss"] == pytest.approx(
        quoted["periodic"] / quoted["hermite_gauss"], rel=0.1
    )
    assert rates["periodic"] / rates["comb"] == pytest.approx(quoted["periodic"] / quoted["comb"], rel=0.1)
    assert rates["periodic"] > rates["hermite_gauss"] > rates["comb"] > 0
    assert rates["unpoled"] < 1.0
