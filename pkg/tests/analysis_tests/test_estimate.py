"""tests estimate.py"""

import math

import numpy as np
import pytest
from pytest import mark

from src.analysis import estimate as m
from src.analysis.theory import detected_distribution, tmsv_preparations
from src.detector.clicks import ClickHistogram, CountHistogram, click_distribution
from src.detector.factorial import factorial_moments, moments_from_clicks
from src.errors import InsufficientData, InvalidParameter
from src.fock_core.moments import MomentSet, photon_moments
from src.fock_core.states import ModePreparation, number_distribution, prepare_two_mode, tmsv_distribution
from src.samplers.quantum import sample_click_histogram
from src.witness.closed_form import analytic_tmsv


@pytest.fixture
def vacuum_hist():
    counts = np.zeros((9, 9), dtype=int)
    counts[0, 0] = 1000
    return ClickHistogram(counts, 1000, 1, 8)


def test_vacuum_histogram(vacuum_hist) -> None:
    moments = m.estimate_moments(vacuum_hist)

    assert np.array_equal(moments.as_vector(), np.zeros(5))
    assert np.array_equal(moments.random_cov, np.zeros((5, 5)))
    assert np.array_equal(moments.sys_err, np.zeros(5))


def test_vacuum_report_warns_about_zero_error(vacuum_hist) -> None:
    report = m.analyze_histogram(vacuum_hist, "vacuum")

    assert report.witness.e_wave.value == 0.0
    assert report.witness.significance_wave == 0.0
    assert report.mean_total.display == "0(±0)"
    assert any("zero random error" in w for w in report.warnings)


def test_single_shot_is_insufficient() -> None:
    counts = np.zeros((9, 9), dtype=int)
    counts[1, 0] = 1

    with pytest.raises(InsufficientData):
        m.estimate_moments(ClickHistogram(counts, 1, None, 8))
    with pytest.raises(InsufficientData):
        m.estimate_count_moments(CountHistogram([[0, 1]], 1))


def test_per_shot_statistics_reproduce_factorial_estimator() -> None:
    rng = np.random.default_rng(2)
    counts = rng.integers(0, 50, size=(9, 9))
    h = ClickHistogram(counts, int(counts.sum()), None, 8)
    stats = m.click_statistics(8).reshape(-1, 5)

    assert np.allclose(h.probs.ravel() @ stats, moments_from_clicks(factorial_moments(h), 8).as_vector(), atol=1e-12)


def test_coherent_mean_photon_number() -> None:
    mu = 0.02
    dist = number_distribution(prepare_two_mode(ModePreparation.coherent(math.sqrt(mu)), ModePreparation.vacuum(), 20))
    h = sample_click_histogram(click_distribution(dist, 8), 1_000_000, 77)
    moments = m.estimate_moments(h)

    assert abs(moments.mean_a - 8 * (1 - math.exp(-mu / 8))) <= 4 * math.sqrt(moments.random_cov[0, 0])
    assert moments.mean_b == 0.0


def test_exact_moments_within_errors() -> None:
    dist = detected_distribution(*tmsv_preparations(0.2), 0.0, 0.5, 0.5)
    exact = photon_moments(dist)
    moments = m.estimate_moments(sample_click_histogram(click_distribution(dist, 8), 500_000, 13))
    random_err = np.sqrt(np.diag(moments.random_cov))

    assert np.all(np.abs(moments.as_vector() - exact.as_vector()) <= moments.sys_err + 4 * random_err)


def test_count_moments_have_no_systematic_part() -> None:
    h = CountHistogram([[3, 1], [2, 4]], 10)
    moments = m.estimate_count_moments(h)

    assert moments.sys_err is None
    assert moments.mean_a == pytest.approx(0.6)
    assert moments.mean_ab == pytest.approx(0.4)
    assert moments.random_cov[0, 0] == pytest.approx(0.6 * 0.4 / 9)


def test_witness_needs_random_covariance() -> None:
    with pytest.raises(InvalidParameter):
        m.witness_with_errors(MomentSet.zero())


def test_analyze_exact_is_noise_free() -> None:
    moments = m.analyze_exact(tmsv_distribution(0.1, 40, 1e-12), 8)

    assert moments.random_cov is None
    assert moments.mean_a == pytest.approx(0.1 / 0.9, rel=0.05)


def test_intensity_warning() -> None:
    bright = MomentSet(0.4, 0.3, 0.5, 0.4, 0.1)

    assert len(m.intensity_warnings(bright, 0.5)) == 1
    assert m.intensity_warnings(bright, 1.0) == []


def test_count_histogram_report_has_no_bins() -> None:
    report = m.analyze_histogram(CountHistogram([[3, 1], [2, 4]], 10, 5), "counts")

    assert report.d_bins is None
    assert report.seed == 5
    assert report.witness.e_wave.sys_err == 0.0


def test_fit_recovers_exact_efficiency() -> None:
    points = [analytic_tmsv(q, 0.024) for q in (0.05, 0.2, 0.4, 0.6)]
    mean_total = [p[2] for p in points]
    e = [p[0] for p in points]

    fit = m.fit_efficiency(mean_total, e)
    weighted = m.fit_efficiency(mean_total, e, [1e-4, 2e-4, 3e-4, 4e-4])

    assert fit.eta == pytest.approx(0.024, rel=1e-12)
    assert fit.eta_err == pytest.approx(0.0, abs=1e-15)
    assert weighted.eta == pytest.approx(0.024, rel=1e-12)
    assert weighted.eta_err > 0
    assert fit.points == 4


def test_weighted_fit_error() -> None:
    fit = m.fit_efficiency([1.0], [-0.5], [0.1])

    assert fit.eta == pytest.approx(1.0)
    assert fit.eta_err == pytest.approx(0.2)


@mark.parametrize("mean_total, e", [([], []), ([0.0, 0.0], [0.1, 0.2]), ([1.0], [1.0, 2.0])])
def test_fit_rejects_degenerate_input(mean_total, e) -> None:
    with pytest.raises(InvalidParameter):
        m.fit_efficiency(mean_total, e)


def test_significance_counts_systematic_error() -> None:
    clicks = click_distribution(detected_distribution(*tmsv_preparations(0.3), 0.0, 0.5, 0.5), 8)
    r = m.witness_with_errors(m.estimate_moments(sample_click_histogram(clicks, 20_000, 3)))
    report = m.analyze_histogram(sample_click_histogram(clicks, 20_000, 3))

    pictures = [
        (r.e_wave, r.err_wave_random, r.err_wave_sys, r.significance_wave, r.significance_wave_random),
        (r.e_part, r.err_part_random, r.err_part_sys, r.significance_part, r.significance_part_random),
    ]
    for e, random_err, sys_err, sig, sig_random in pictures:
        assert e < 0
        assert sys_err > 0
        assert sig == pytest.approx(abs(e) / (random_err + sys_err))
        assert sig_random == pytest.approx(abs(e) / random_err)
        assert sig < sig_random

    assert report.witness.significance_wave == pytest.approx(r.significance_wave)
    assert report.witness.significance_wave_random == pytest.approx(r.significance_wave_random)


def test_bounds_carry_through_estimation() -> None:
    counts = np.zeros((9, 9), dtype=int)
    counts[0, 0], counts[1, 0], counts[0, 1], counts[1, 1], counts[2, 0] = 900, 40, 40, 15, 5
    moments = m.estimate_moments(ClickHistogram(counts, 1000, None, 8))
    bounds = moments.order_sys_err

    assert np.allclose(moments.sys_err, [bounds[0], bounds[1], bounds[2] + bounds[0], bounds[3] + bounds[1], bounds[4]])
