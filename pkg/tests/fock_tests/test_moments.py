"""tests moments.py"""

import numpy as np
import pytest
from pytest import mark

from src.errors import InvalidParameter
from src.fock_core import moments as m
from src.fock_core.loss import apply_loss
from src.fock_core.states import ModePreparation, number_distribution, prepare_two_mode, tmsv_distribution


def test_vacuum_moments_vanish() -> None:
    dist = number_distribution(prepare_two_mode(ModePreparation.vacuum(), ModePreparation.vacuum(), 2))

    assert np.array_equal(m.photon_moments(dist).as_vector(), np.zeros(5))


def test_tmsv_moments() -> None:
    moments = m.photon_moments(tmsv_distribution(0.5, 120, 1e-12))

    assert moments.as_vector() == pytest.approx([1.0, 1.0, 3.0, 3.0, 3.0], abs=1e-9)
    assert moments.mean_total == pytest.approx(2.0, abs=1e-9)


@mark.parametrize("q, eta", [(0.2, 0.024), (0.5, 0.5), (0.7, 1.0)])
def test_lossy_tmsv_mean(q, eta) -> None:
    dist = apply_loss(tmsv_distribution(q, 200, 1e-12), eta, eta)
    moments = m.photon_moments(dist)

    assert moments.mean_a == pytest.approx(eta * q / (1 - q), rel=1e-9)
    assert moments.mean_b == pytest.approx(eta * q / (1 - q), rel=1e-9)


def test_coherent_moments_are_poissonian() -> None:
    dist = number_distribution(
        prepare_two_mode(ModePreparation.coherent(0.8), ModePreparation.coherent(0.3j), 40, 1e-12)
    )
    moments = m.photon_moments(dist)

    assert moments.mean_a2 - moments.mean_a**2 == pytest.approx(moments.mean_a, abs=1e-10)
    assert moments.mean_ab == pytest.approx(moments.mean_a * moments.mean_b, abs=1e-10)


def test_negative_variance_is_rejected() -> None:
    with pytest.raises(InvalidParameter):
        m.MomentSet(1.0, 0.0, 0.5, 0.0, 0.0)


def test_rounding_noise_variance_is_accepted() -> None:
    moments = m.MomentSet(0.1, 0.0, 0.01 - 1e-12, 0.0, 0.0)

    assert moments.mean_a2 < moments.mean_a**2


def test_uncertainty_shapes_are_checked() -> None:
    cases = [
        {"random_cov": np.eye(4)},
        {"random_cov": np.triu(np.ones((5, 5)))},
        {"sys_err": np.ones(4)},
        {"sys_err": -np.ones(5)},
    ]

    for kwargs in cases:
        with pytest.raises(InvalidParameter):
            m.MomentSet.from_vector(np.zeros(5), **kwargs)


def test_mean_total_error() -> None:
    cov = np.zeros((5, 5))
    cov[0, 0], cov[1, 1], cov[0, 1], cov[1, 0] = 4.0, 9.0, 1.5, 1.5
    moments = m.MomentSet.from_vector(np.zeros(5), random_cov=cov)

    assert moments.mean_total_err == pytest.approx(4.0)
    assert m.MomentSet.zero().mean_total_err == 0.0
