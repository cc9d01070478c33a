""" Click statistics of a D-bin detector: each photon lands in a uniformly
random bin and a bin clicks iff it is occupied.
"""
from __future__ import annotations

import dataclasses
import functools
import logging
from typing import Optional

import numpy as np

from src import settings
from src.errors import InvalidParameter, MalformedHistogram
from src.fock_core.states import JointNumberDistribution, check_tail

logger = logging.getLogger(__name__)


@functools.lru_cache(maxsize=32)
def occupancy_matrix(n_max: int, d: int) -> np.ndarray:
    """K[n][k] = P(k clicks | n photons) for n <= n_max.

    Built one photon at a time: the new photon either hits one of the k
    occupied bins (prob k/d) or opens a new one (prob (d-k)/d). All terms
    are nonnegative, unlike the alternating inclusion-exclusion sum.
    """
    if d < 1 or n_max < 0:
        raise InvalidParameter(f"need d >= 1 and n_max >= 0, got d={d}, n_max={n_max}")
    k = np.arange(d + 1)
    stay = k / d
    advance = (d - k + 1) / d
    kernel = np.zeros((n_max + 1, d + 1))
    kernel[0, 0] = 1.0
    for n in range(1, n_max + 1):
        prev = kernel[n - 1]
        kernel[n] = prev * stay
        kernel[n, 1:] += prev[:-1] * advance[1:]
    kernel.setflags(write=False)
    return kernel


def occupancy_kernel(n: int, d: int) -> np.ndarray:
    """P(k clicks | n photons), k = 0..d."""
    return occupancy_matrix(n, d)[n]


@dataclasses.dataclass(frozen=True, eq=False)
class ClickDistribution:
    """Exact joint click statistics c[k_A][k_B]"""

    probs: np.ndarray
    d_bins: int

    def __post_init__(self):
        probs = np.array(self.probs, dtype=float)
        if probs.shape != (self.d_bins + 1, self.d_bins + 1):
            raise InvalidParameter(f"probs shape {probs.shape} does not match d_bins={self.d_bins}")
        if np.any(probs < -1e-15) or probs.sum() > 1.0 + 1e-9:
            raise InvalidParameter("click probabilities must be nonnegative and sum to at most 1")
        probs = np.clip(probs, 0.0, None)
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    @property
    def tail(self) -> float:
        return max(0.0, 1.0 - float(self.probs.sum()))


def click_distribution(
    dist: JointNumberDistribution, d: int = settings.D_BINS, tau: float = settings.TAU
) -> ClickDistribution:
    """c[k_A][k_B] = sum p(n_A, n_B) P(k_A | n_A) P(k_B | n_B)."""
    check_tail(dist, tau)
    rows, cols = dist.probs.shape
    kernel_a = occupancy_matrix(rows - 1, d)
    kernel_b = occupancy_matrix(cols - 1, d)
    return ClickDistribution(kernel_a.T @ dist.probs @ kernel_b, d)


@dataclasses.dataclass(frozen=True, eq=False)
class Histogram:
    """Dense integer outcome counts [x_A][x_B] of a finite run."""

    counts: np.ndarray
    shots: int
    seed: Optional[int] = None

    def __post_init__(self):
        counts = np.array(self.counts)
        if counts.ndim != 2 or counts.size == 0:
            raise MalformedHistogram(f"counts must be a nonempty matrix, got shape {counts.shape}")
        if not np.issubdtype(counts.dtype, np.integer):
            if not np.all(counts == np.round(counts)):
                raise MalformedHistogram("counts must be integers")
        counts = counts.astype(np.int64)
        if np.any(counts < 0):
            raise MalformedHistogram("counts must be nonnegative")
        if int(counts.sum()) != self.shots:
            raise MalformedHistogram(f"counts sum to {int(counts.sum())}, expected shots={self.shots}")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    @property
    def probs(self) -> np.ndarray:
        return self.counts / self.shots

    def cells(self):
        """Nonzero cells as (x_A, x_B, count), row-major."""
        rows, cols = np.nonzero(self.counts)
        return [(int(r), int(c), int(self.counts[r, c])) for r, c in zip(rows, cols)]

    def __eq__(self, other) -> bool:
        return (
            type(self) is type(other)
            and self.shots == other.shots
            and self.seed == other.seed
            and self.counts.shape == other.counts.shape
            and bool(np.all(self.counts == other.counts))
        )


@dataclasses.dataclass(frozen=True, eq=False)
class ClickHistogram(Histogram):
    """Empirical c[k_A][k_B] over (D+1) x (D+1) click outcomes"""

    d_bins: int = settings.D_BINS

    def __post_init__(self):
        super().__post_init__()
        if self.counts.shape != (self.d_bins + 1, self.d_bins + 1):
            raise MalformedHistogram(f"counts shape {self.counts.shape} does not match d_bins={self.d_bins}")

    def __add__(self, other: ClickHistogram) -> ClickHistogram:
        if not isinstance(other, ClickHistogram) or other.d_bins != self.d_bins:
            raise InvalidParameter("only click histograms with equal d_bins can be merged")
        return ClickHistogram(self.counts + other.counts, self.shots + other.shots, None, self.d_bins)

    def __eq__(self, other) -> bool:
        return super().__eq__(other) and self.d_bins == other.d_bins

    @staticmethod
    def empty(d_bins: int, seed: Optional[int] = None) -> ClickHistogram:
        return ClickHistogram(np.zeros((d_bins + 1, d_bins + 1), dtype=np.int64), 0, seed, d_bins)


@dataclasses.dataclass(frozen=True, eq=False)
class CountHistogram(Histogram):
    """Photon counts (M, N) with perfect resolution, as produced by the classical samplers"""

    def __add__(self, other: CountHistogram) -> CountHistogram:
        if not isinstance(other, CountHistogram):
            raise InvalidParameter("only count histograms can be merged")
        rows = max(self.counts.shape[0], other.counts.shape[0])
        cols = max(self.counts.shape[1], other.counts.shape[1])
        merged = np.zeros((rows, cols), dtype=np.int64)
        merged[: self.counts.shape[0], : self.counts.shape[1]] += self.counts
        merged[: other.counts.shape[0], : other.counts.shape[1]] += other.counts
        return CountHistogram(merged, self.shots + other.shots, None)

    @staticmethod
    def from_pairs(m: np.ndarray, n: np.ndarray, seed: Optional[int] = None) -> CountHistogram:
        m = np.asarray(m, dtype=np.int64)
        n = np.asarray(n, dtype=np.int64)
        rows = int(m.max()) + 1 if m.size else 1
        cols = int(n.max()) + 1 if n.size else 1
        counts = np.zeros((rows, cols), dtype=np.int64)
        np.add.at(counts, (m, n), 1)
        return CountHistogram(counts, int(m.size), seed)
