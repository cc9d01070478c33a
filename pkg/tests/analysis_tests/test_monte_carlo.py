"""Monte Carlo checks of the simulated low-efficiency TMSV experiment"""

import numpy as np
import pytest
from pytest import mark

from src.analysis.estimate import analyze_histogram, estimate_moments, fit_efficiency, witness_with_errors
from src.analysis.theory import detected_distribution, q_from_mean_total, tmsv_preparations
from src.detector.clicks import click_distribution
from src.samplers.quantum import sample_click_histogram, sample_quantum_shots
from src.samplers.run_config import RunConfig
from src.witness.closed_form import analytic_tmsv

ETA = 0.024
MEAN_TOTALS = [0.005, 0.02, 0.05]


def _detected_tmsv(mean_total: float, eta: float = ETA):
    prep_a, prep_b = tmsv_preparations(q_from_mean_total(mean_total, eta))
    return detected_distribution(prep_a, prep_b, 0.0, eta, eta)


@pytest.fixture(scope="module")
def low_efficiency_runs():
    runs = []
    for i, mean_total in enumerate(MEAN_TOTALS):
        histogram = sample_quantum_shots(_detected_tmsv(mean_total), RunConfig(shots=10_000_000, seed=2019 + i))
        runs.append((mean_total, witness_with_errors(estimate_moments(histogram))))
    return runs


@mark.tens_seconds
def test_witnesses_follow_efficiency_line(low_efficiency_runs) -> None:
    for mean_total, result in low_efficiency_runs:
        expected = -(ETA / 2) * mean_total

        assert abs(result.e_wave - expected) <= 3 * result.err_wave_random + result.err_wave_sys
        assert abs(result.e_part - expected) <= 3 * result.err_part_random + result.err_part_sys


@mark.tens_seconds
def test_brightest_point_is_significant(low_efficiency_runs) -> None:
    _, result = low_efficiency_runs[-1]

    assert result.significance_wave >= 3
    assert result.significance_part >= 3


@mark.tens_seconds
def test_fitted_efficiency(low_efficiency_runs) -> None:
    mean_total, e, sigma = [], [], []
    for point, result in low_efficiency_runs:
        mean_total += [analytic_tmsv(q_from_mean_total(point, ETA), ETA)[2]] * 2
        e += [result.e_wave, result.e_part]
        sigma += [result.err_wave_random, result.err_part_random]
    fit = fit_efficiency(mean_total, e, sigma)

    assert abs(fit.eta - ETA) <= 5 * fit.eta_err


@mark.tens_seconds
def test_random_error_scales_with_shots() -> None:
    dist = _detected_tmsv(0.05)
    sigma = []
    for shots, seed in [(100_000, 1), (1_000_000, 2), (10_000_000, 3)]:
        result = witness_with_errors(estimate_moments(sample_quantum_shots(dist, RunConfig(shots=shots, seed=seed))))
        sigma.append(result.err_wave_random)

    for ratio in (sigma[0] / sigma[1], sigma[1] / sigma[2]):
        assert ratio == pytest.approx(np.sqrt(10), rel=0.3)


def test_tmsv_fixture_run() -> None:
    report = analyze_histogram(sample_quantum_shots(_detected_tmsv(0.02), RunConfig(shots=1_000_000, seed=7)))
    e_wave = report.witness.e_wave
    expected = -(ETA / 2) * 0.02

    assert abs(e_wave.value - expected) <= 3 * e_wave.random_err + e_wave.sys_err
    assert report.warnings == []
    assert report.d_bins == 8


@mark.tens_seconds
def test_propagated_error_matches_spread() -> None:
    prep_a, prep_b = tmsv_preparations(0.3)
    clicks = click_distribution(detected_distribution(prep_a, prep_b, 0.0, 0.5, 0.5), 8)
    e_wave, e_part, err_wave, err_part = [], [], [], []
    for seed in range(200):
        result = witness_with_errors(estimate_moments(sample_click_histogram(clicks, 20_000, seed)))
        e_wave.append(result.e_wave)
        e_part.append(result.e_part)
        err_wave.append(result.err_wave_random)
        err_part.append(result.err_part_random)

    assert np.mean(err_wave) == pytest.approx(np.std(e_wave, ddof=1), rel=0.25)
    assert np.mean(err_part) == pytest.approx(np.std(e_part, ddof=1), rel=0.25)
