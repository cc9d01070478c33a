"""tests classical.py"""

import math

import numpy as np
import pytest
from pytest import mark

from src.analysis.estimate import estimate_count_moments, witness_with_errors
from src.errors import InvalidParameter
from src.fock_core.states import ModePreparation
from src.samplers import classical as m
from src.samplers.classical import ClassicalEnsemble, EnsembleKind
from src.samplers.run_config import RunConfig
from src.witness.matrices import covariance_matrix


def test_single_particle_is_routed_at_random() -> None:
    ens = ClassicalEnsemble.weighted(EnsembleKind.particle, [(1, 0)])
    shots = 100000
    h = m.sample_classical_particles(ens, RunConfig(shots=shots, seed=4, eta=1.0))
    moments = estimate_count_moments(h)

    assert {(a, b) for a, b, _ in h.cells()} <= {(1, 0), (0, 1)}
    assert abs(h.counts[1, 0] / shots - 0.5) <= 4 * 0.5 / math.sqrt(shots)
    assert moments.mean_ab == 0.0
    assert covariance_matrix(moments).a12 == pytest.approx(-0.25, abs=1e-3)


def test_particle_thinning() -> None:
    ens = ClassicalEnsemble.weighted(EnsembleKind.particle, [(2, 1)])
    moments = estimate_count_moments(m.sample_classical_particles(ens, RunConfig(shots=200000, seed=8, eta=0.5)))

    assert abs(moments.mean_a - 0.75) <= 4 * math.sqrt(moments.random_cov[0, 0])
    assert abs(moments.mean_b - 0.75) <= 4 * math.sqrt(moments.random_cov[1, 1])


def test_fixed_wave_gives_independent_poisson_counts() -> None:
    ens = ClassicalEnsemble.weighted(EnsembleKind.wave, [(1.0, 0.5j)])
    moments = estimate_count_moments(m.sample_classical_waves(ens, RunConfig(shots=200000, seed=6, eta=0.4)))
    c = covariance_matrix(moments)

    assert abs(moments.mean_a - 0.25) <= 4 * math.sqrt(moments.random_cov[0, 0])
    assert abs(moments.mean_b - 0.25) <= 4 * math.sqrt(moments.random_cov[1, 1])
    assert c.a11 == pytest.approx(moments.mean_a, abs=0.01)
    assert c.a12 == pytest.approx(0.0, abs=0.005)


def test_wave_phase_moves_intensity_between_arms() -> None:
    ens = ClassicalEnsemble.weighted(EnsembleKind.wave, [(1.0, 1.0)])
    h = m.sample_classical_waves(ens, RunConfig(shots=1000, seed=2, eta=1.0, theta=0.0))

    assert h.counts[:, 1:].sum() == 0


def test_doubling_efficiency_doubles_means() -> None:
    ens = ClassicalEnsemble.weighted(EnsembleKind.wave, [(0.8, 0.3 + 0.2j), (0.1, 1.0)], [0.3, 0.7])
    low = estimate_count_moments(m.sample_classical_waves(ens, RunConfig(shots=200000, seed=1, eta=0.3)))
    high = estimate_count_moments(m.sample_classical_waves(ens, RunConfig(shots=200000, seed=2, eta=0.6)))

    for i in (0, 1):
        sigma = math.sqrt(4 * low.random_cov[i, i] + high.random_cov[i, i])
        assert abs(high.as_vector()[i] - 2 * low.as_vector()[i]) <= 4 * sigma


def test_same_seed_same_counts() -> None:
    ens = ClassicalEnsemble.thermal(EnsembleKind.particle, 0.3)
    cfg = RunConfig(shots=30000, seed=10, eta=0.5, chunk_shots=7000)
    parallel = RunConfig(shots=30000, seed=10, eta=0.5, chunk_shots=7000, workers=2)

    assert m.sample_classical_particles(ens, cfg) == m.sample_classical_particles(ens, cfg)
    assert m.sample_classical_particles(ens, cfg) == m.sample_classical_particles(ens, parallel)


def test_ensemble_validation() -> None:
    cases = [
        lambda: ClassicalEnsemble.weighted(EnsembleKind.particle, [(-1, 0)]),
        lambda: ClassicalEnsemble.weighted(EnsembleKind.wave, [(1.0, 0.0)], [-1.0]),
        lambda: ClassicalEnsemble.from_modes(EnsembleKind.wave, ModePreparation.fock(1), ModePreparation.vacuum()),
        lambda: ClassicalEnsemble.from_modes(
            EnsembleKind.particle, ModePreparation.coherent(1.0), ModePreparation.vacuum()
        ),
        lambda: m.sample_classical_waves(
            ClassicalEnsemble.thermal(EnsembleKind.particle, 0.1), RunConfig(shots=10, seed=0)
        ),
    ]

    for case in cases:
        with pytest.raises(InvalidParameter):
            case()


def _random_particle_ensemble(rng: np.random.Generator) -> ClassicalEnsemble:
    extra = rng.integers(0, 5, size=(rng.integers(1, 4), 2))
    settings = np.vstack([[(0, 0), (2, 1)], extra])
    return ClassicalEnsemble.weighted(EnsembleKind.particle, settings, rng.uniform(0.1, 1.0, len(settings)))


def _random_wave_ensemble(rng: np.random.Generator) -> ClassicalEnsemble:
    k = rng.integers(3, 6)
    settings = (rng.normal(size=(k, 2)) + 1j * rng.normal(size=(k, 2))) * 0.7
    return ClassicalEnsemble.weighted(EnsembleKind.wave, settings, rng.uniform(0.1, 1.0, k))


@mark.tens_seconds
@mark.parametrize("index", range(20))
def test_particle_ensembles_respect_particle_bound(index) -> None:
    rng = np.random.default_rng(1000 + index)
    ens = _random_particle_ensemble(rng)
    cfg = RunConfig(shots=1_000_000, seed=index, eta=float(rng.uniform(0.3, 0.9)))
    result = witness_with_errors(estimate_count_moments(m.sample_classical_particles(ens, cfg)))

    assert result.e_part >= -3 * result.err_part_random


@mark.tens_seconds
@mark.parametrize("index", range(20))
def test_wave_ensembles_respect_wave_bound(index) -> None:
    rng = np.random.default_rng(2000 + index)
    ens = _random_wave_ensemble(rng)
    eta, theta = float(rng.uniform(0.3, 0.9)), float(rng.uniform(0, 2 * np.pi))
    cfg = RunConfig(shots=1_000_000, seed=index, eta=eta, theta=theta)
    result = witness_with_errors(estimate_count_moments(m.sample_classical_waves(ens, cfg)))

    assert result.e_wave >= -3 * result.err_wave_random


@mark.tens_seconds
@mark.parametrize("nbar", [0.05, 0.1, 0.5])
def test_thermal_waves_respect_both_bounds(nbar) -> None:
    ens = ClassicalEnsemble.thermal(EnsembleKind.wave, nbar)
    result = witness_with_errors(
        estimate_count_moments(m.sample_classical_waves(ens, RunConfig(shots=1_000_000, seed=31, eta=0.5)))
    )

    assert result.e_wave >= -3 * result.err_wave_random
    assert result.e_part >= -3 * result.err_part_random


@mark.tens_seconds
def test_thermal_particles_respect_particle_bound() -> None:
    ens = ClassicalEnsemble.thermal(EnsembleKind.particle, 0.2, 0.1)
    result = witness_with_errors(
        estimate_count_moments(m.sample_classical_particles(ens, RunConfig(shots=1_000_000, seed=32, eta=0.6)))
    )

    assert result.e_part >= -3 * result.err_part_random
