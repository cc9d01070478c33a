"""tests the exact Fock-space pipeline against the closed forms"""

import math

import numpy as np
import pytest
from pytest import mark

from src.analysis.estimate import analyze_exact
from src.analysis.theory import detected_distribution, theory_point, tmsv_preparations
from src.fock_core.moments import MomentSet, photon_moments
from src.fock_core.states import ModePreparation
from src.witness import result as m
from src.witness.matrices import Picture, moment_gradient


@mark.parametrize("q", [0.1, 0.3, 0.5, 0.7])
@mark.parametrize("eta", [0.024, 0.5, 1.0])
def test_tmsv_pipeline_matches_closed_form(q, eta) -> None:
    exact = theory_point("tmsv", eta=eta, q=q)
    piped = theory_point("tmsv", eta=eta, q=q, via="pipeline", tau=1e-12)

    assert piped.e_wave == pytest.approx(exact.e_wave, abs=1e-9)
    assert piped.e_part == pytest.approx(exact.e_part, abs=1e-9)
    assert piped.mean_total == pytest.approx(exact.mean_total, abs=1e-9)


@mark.parametrize(
    "alpha, beta, theta",
    [(1.0, 1.0, 0.0), (0.3 + 0.4j, -0.2j, 1.1), (0.8, 0.0, 0.0), (0.5, 0.5, math.pi / 2)],
)
@mark.parametrize("eta", [0.3, 1.0])
def test_coherent_pipeline_matches_closed_form(alpha, beta, theta, eta) -> None:
    exact = theory_point("coherent", eta=eta, alpha=alpha, beta=beta, theta=theta)
    piped = theory_point("coherent", eta=eta, alpha=alpha, beta=beta, theta=theta, via="pipeline")

    assert piped.e_wave == pytest.approx(exact.e_wave, abs=1e-9)
    assert piped.e_part == pytest.approx(exact.e_part, abs=1e-9)


@mark.parametrize("a, b", [(1, 1), (2, 0), (2, 3), (0, 0)])
@mark.parametrize("eta", [0.5, 1.0])
def test_fock_pipeline_matches_closed_form(a, b, eta) -> None:
    exact = theory_point("fock", eta=eta, m=a, n=b)
    piped = theory_point("fock", eta=eta, m=a, n=b, via="pipeline")

    assert piped.e_wave == pytest.approx(exact.e_wave, abs=1e-9)
    assert piped.e_part == pytest.approx(exact.e_part, abs=1e-9)


def test_hong_ou_mandel_witnesses() -> None:
    dist = detected_distribution(ModePreparation.fock(1), ModePreparation.fock(1), 0.0, 1.0, 1.0)
    result = m.witness_pair(photon_moments(dist))

    assert result.e_wave == pytest.approx(-1.0, abs=1e-12)
    assert result.e_part == pytest.approx(0.0, abs=1e-12)


def test_significance() -> None:
    cases = [(-0.5, 0.1), (0.5, 0.1), (-0.5, 0.0), (0.0, 0.2)]
    expected = [5.0, 0.0, 0.0, 0.0]
    results = [m.significance(e, sigma) for e, sigma in cases]

    assert results == pytest.approx(expected)


def test_errors_follow_moment_uncertainties() -> None:
    moments = photon_moments(
        detected_distribution(ModePreparation.fock(1), ModePreparation.fock(1), 0.0, 0.5, 0.5)
    )
    cov = np.diag([1e-6, 1e-6, 4e-6, 4e-6, 1e-6])
    with_errors = type(moments).from_vector(moments.as_vector(), random_cov=cov, sys_err=np.full(5, 1e-4))
    result = m.witness_pair(with_errors)

    assert result.err_wave_random > 0
    assert result.err_wave_sys > 0
    assert result.significance_wave == pytest.approx(abs(result.e_wave) / result.err_wave_total)
    assert result.significance_wave_random == pytest.approx(abs(result.e_wave) / result.err_wave_random)
    assert result.significance_wave < result.significance_wave_random
    assert m.witness_pair(moments).err_wave_random == 0.0


def test_first_moment_bias_is_counted_once() -> None:
    moments = analyze_exact(detected_distribution(*tmsv_preparations(0.3), 0.0, 0.5, 0.5), 8)
    bounds = moments.order_sys_err
    result = m.witness_pair(moments)

    for picture, err_sys in [(Picture.wave, result.err_wave_sys), (Picture.particle, result.err_part_sys)]:
        per_moment = float(np.abs(moment_gradient(moments, picture)) @ moments.sys_err)
        assert err_sys == pytest.approx(0.5 * (bounds[2] + bounds[3]) + bounds[4], rel=1e-6)
        assert err_sys < per_moment


def test_moment_bounds_without_orders() -> None:
    moments = MomentSet(0.2, 0.2, 0.25, 0.25, 0.1, sys_err=np.full(5, 1e-4))
    g = moment_gradient(moments, Picture.wave)

    assert m.witness_pair(moments).err_wave_sys == pytest.approx(float(np.abs(g).sum()) * 1e-4)
