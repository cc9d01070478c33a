""" The simulated experiment: photon numbers drawn from the exact joint
distribution, each photon dropped into a uniformly random detector bin.
"""
import logging

import numpy as np

from logger.logger_config import TRACE
from src.detector.clicks import ClickDistribution, ClickHistogram
from src.errors import InvalidParameter
from src.fock_core.states import JointNumberDistribution
from src.samplers.rng import chunk_rng, run_chunked
from src.samplers.run_config import RunConfig

logger = logging.getLogger(__name__)


def clicks_for(photons: np.ndarray, d_bins: int, rng: np.random.Generator) -> np.ndarray:
    """Number of occupied bins per shot when photons[i] photons spread over d_bins."""
    shots = photons.size
    total = int(photons.sum())
    occupied = np.zeros((shots, d_bins), dtype=bool)
    if total:
        owners = np.repeat(np.arange(shots), photons)
        occupied[owners, rng.integers(0, d_bins, size=total)] = True
    return occupied.sum(axis=1)


def _click_histogram(k_a: np.ndarray, k_b: np.ndarray, d_bins: int) -> ClickHistogram:
    flat = np.bincount(k_a * (d_bins + 1) + k_b, minlength=(d_bins + 1) ** 2)
    return ClickHistogram(flat.reshape(d_bins + 1, d_bins + 1), int(k_a.size), None, d_bins)


def _quantum_chunk(payload, seed: int, chunk: int, size: int) -> ClickHistogram:
    probs, cols, d_bins = payload
    rng = chunk_rng(seed, chunk)
    cells = rng.choice(probs.size, size=size, p=probs)
    n_a, n_b = np.divmod(cells, cols)
    k_a = clicks_for(n_a, d_bins, rng)
    k_b = clicks_for(n_b, d_bins, rng)
    logger.log(TRACE, f"chunk={chunk}, size={size}")
    return _click_histogram(k_a, k_b, d_bins)


def sample_quantum_shots(dist: JointNumberDistribution, cfg: RunConfig) -> ClickHistogram:
    """Finite-shot click histogram of `dist` (loss already applied).

    The truncated distribution is renormalized before sampling; its tail is
    guarded upstream.
    """
    logger.info(f"shots={cfg.shots}, seed={cfg.seed}, d_bins={cfg.d_bins}")
    total = dist.probs.sum()
    if total <= 0:
        raise InvalidParameter("distribution has no probability mass")
    probs = (dist.probs / total).ravel()
    payload = (probs, dist.probs.shape[1], cfg.d_bins)
    merged = run_chunked(_quantum_chunk, payload, cfg.shots, cfg.seed, cfg.chunk_shots, cfg.workers)
    logger.info("- Return")
    return ClickHistogram(merged.counts, merged.shots, cfg.seed, cfg.d_bins)


def sample_click_histogram(c: ClickDistribution, shots: int, seed: int) -> ClickHistogram:
    """Multinomial finite-shot realization of an exact click distribution."""
    if shots < 1:
        raise InvalidParameter(f"shots must be >= 1, got {shots}")
    probs = c.probs.ravel() / c.probs.sum()
    counts = chunk_rng(seed, 0).multinomial(shots, probs)
    return ClickHistogram(counts.reshape(c.probs.shape), shots, seed, c.d_bins)
