""" Classical reference models behind the beam splitter.

Particles: X + Y indistinguishable particles, each routed to either arm
with probability 1/2 and kept with the arm's efficiency, so the counts are
binomial. Waves: amplitudes mix as X' = (X + e^{i theta} Y)/sqrt(2),
Y' = (Y - e^{-i theta} X)/sqrt(2) and each arm registers Poisson counts
with mean eta |amplitude|^2. Mode A (count M) always sees X', matching
output mode A of the quantum pipeline.
"""
from __future__ import annotations

import cmath
import dataclasses
import logging
import math
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from logger.logger_config import TRACE
from src.detector.clicks import CountHistogram
from src.errors import InvalidParameter
from src.fock_core.states import ModeKind, ModePreparation
from src.samplers.rng import chunk_rng, run_chunked
from src.samplers.run_config import RunConfig

logger = logging.getLogger(__name__)


class EnsembleKind(str, Enum):
    particle = "particle"
    wave = "wave"


_ALLOWED_MODES = {
    EnsembleKind.particle: (ModeKind.vacuum, ModeKind.fock, ModeKind.thermal),
    EnsembleKind.wave: (ModeKind.vacuum, ModeKind.coherent, ModeKind.thermal),
}


@dataclasses.dataclass(frozen=True, eq=False)
class ClassicalEnsemble:
    """P(X, Y): either weighted joint settings or independent per-mode sources.

    Per-mode sources are vacuum, a fixed value (fock n / coherent alpha) or
    thermal with mean nbar: geometric counts for particles, circular
    Gaussian amplitudes with E|X|^2 = nbar for waves.
    """

    kind: EnsembleKind
    settings: Optional[np.ndarray] = None  # shape (k, 2)
    weights: Optional[np.ndarray] = None  # shape (k,)
    modes: Optional[tuple[ModePreparation, ModePreparation]] = None

    def __post_init__(self):
        kind = EnsembleKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if (self.settings is None) == (self.modes is None):
            raise InvalidParameter("give either weighted settings or per-mode sources")

        if self.settings is not None:
            dtype = np.int64 if kind == EnsembleKind.particle else complex
            settings = np.array(self.settings, dtype=dtype).reshape(-1, 2)
            if kind == EnsembleKind.particle and np.any(settings < 0):
                raise InvalidParameter("particle numbers must be nonnegative")
            if not np.all(np.isfinite(settings)):
                raise InvalidParameter("settings must be finite")
            weights = np.ones(len(settings)) if self.weights is None else np.array(self.weights, dtype=float)
            if weights.shape != (len(settings),) or np.any(weights < 0) or weights.sum() <= 0:
                raise InvalidParameter("weights must be nonnegative, one per setting")
            weights = weights / weights.sum()
            settings.setflags(write=False)
            weights.setflags(write=False)
            object.__setattr__(self, "settings", settings)
            object.__setattr__(self, "weights", weights)
        else:
            for prep in self.modes:
                if prep.kind not in _ALLOWED_MODES[kind]:
                    message = f"{prep.kind.value} input has no classical {kind.value} model"
                    logger.error(message)
                    raise InvalidParameter(message)
            object.__setattr__(self, "modes", tuple(self.modes))

    @staticmethod
    def weighted(kind: EnsembleKind, settings: Sequence, weights: Optional[Sequence] = None) -> ClassicalEnsemble:
        return ClassicalEnsemble(kind, settings=np.asarray(settings), weights=weights)

    @staticmethod
    def from_modes(kind: EnsembleKind, prep_a: ModePreparation, prep_b: ModePreparation) -> ClassicalEnsemble:
        return ClassicalEnsemble(kind, modes=(prep_a, prep_b))

    @staticmethod
    def thermal(kind: EnsembleKind, nbar_a: float, nbar_b: Optional[float] = None) -> ClassicalEnsemble:
        nbar_b = nbar_a if nbar_b is None else nbar_b
        return ClassicalEnsemble.from_modes(kind, ModePreparation.thermal(nbar_a), ModePreparation.thermal(nbar_b))

    def _draw_mode(self, prep: ModePreparation, rng: np.random.Generator, size: int) -> np.ndarray:
        if prep.kind == ModeKind.thermal:
            if self.kind == EnsembleKind.particle:
                return rng.geometric(1.0 / (1.0 + prep.nbar), size=size) - 1
            scale = math.sqrt(prep.nbar / 2)
            return scale * (rng.standard_normal(size) + 1j * rng.standard_normal(size))
        if self.kind == EnsembleKind.particle:
            return np.full(size, prep.n if prep.kind == ModeKind.fock else 0, dtype=np.int64)
        return np.full(size, prep.amplitude, dtype=complex)

    def draw(self, rng: np.random.Generator, size: int) -> tuple[np.ndarray, np.ndarray]:
        """`size` independent samples of (X, Y)."""
        if self.settings is not None:
            picks = rng.choice(len(self.settings), size=size, p=self.weights)
            chosen = self.settings[picks]
            return chosen[:, 0], chosen[:, 1]
        return self._draw_mode(self.modes[0], rng, size), self._draw_mode(self.modes[1], rng, size)


def _particle_chunk(payload, seed: int, chunk: int, size: int) -> CountHistogram:
    ens, eta_a, eta_b = payload
    rng = chunk_rng(seed, chunk)
    x, y = ens.draw(rng, size)
    routed_a = rng.binomial(x + y, 0.5)
    routed_b = x + y - routed_a
    m = rng.binomial(routed_a, eta_a)
    n = rng.binomial(routed_b, eta_b)
    logger.log(TRACE, f"chunk={chunk}, size={size}")
    return CountHistogram.from_pairs(m, n)


def _wave_chunk(payload, seed: int, chunk: int, size: int) -> CountHistogram:
    ens, eta_a, eta_b, theta = payload
    rng = chunk_rng(seed, chunk)
    x, y = ens.draw(rng, size)
    phase = cmath.exp(1j * theta)
    x_out = (x + phase * y) / math.sqrt(2)
    y_out = (y - x / phase) / math.sqrt(2)
    m = rng.poisson(eta_a * np.abs(x_out) ** 2)
    n = rng.poisson(eta_b * np.abs(y_out) ** 2)
    logger.log(TRACE, f"chunk={chunk}, size={size}")
    return CountHistogram.from_pairs(m, n)


def sample_classical_particles(ens: ClassicalEnsemble, cfg: RunConfig) -> CountHistogram:
    """(M, N) counts of the binomial particle model."""
    logger.info(f"shots={cfg.shots}, seed={cfg.seed}")
    if ens.kind != EnsembleKind.particle:
        raise InvalidParameter("particle sampler needs a particle ensemble")
    payload = (ens, cfg.efficiency_a, cfg.efficiency_b)
    merged = run_chunked(_particle_chunk, payload, cfg.shots, cfg.seed, cfg.chunk_shots, cfg.workers)
    logger.info("- Return")
    return CountHistogram(merged.counts, merged.shots, cfg.seed)


def sample_classical_waves(ens: ClassicalEnsemble, cfg: RunConfig) -> CountHistogram:
    """(M, N) counts of the Poisson wave model."""
    logger.info(f"shots={cfg.shots}, seed={cfg.seed}")
    if ens.kind != EnsembleKind.wave:
        raise InvalidParameter("wave sampler needs a wave ensemble")
    payload = (ens, cfg.efficiency_a, cfg.efficiency_b, cfg.theta)
    merged = run_chunked(_wave_chunk, payload, cfg.shots, cfg.seed, cfg.chunk_shots, cfg.workers)
    logger.info("- Return")
    return CountHistogram(merged.counts, merged.shots, cfg.seed)
