""" 2x2 symmetric matrices of the witness: covariance, classical bounds,
closed-form minimal eigenvalue and its derivatives.
"""
from __future__ import annotations

import dataclasses
import logging
import math
from enum import Enum

import numpy as np

from src.errors import InvalidParameter
from src.fock_core.moments import MomentSet

logger = logging.getLogger(__name__)


class Picture(str, Enum):
    wave = "wave"
    particle = "particle"


@dataclasses.dataclass(frozen=True)
class SymMatrix2:
    """[[a11, a12], [a12, a22]]"""

    a11: float
    a12: float
    a22: float

    def __post_init__(self):
        if not all(math.isfinite(x) for x in (self.a11, self.a12, self.a22)):
            raise InvalidParameter(f"non-finite matrix entries {self}")

    def __sub__(self, other: SymMatrix2) -> SymMatrix2:
        return SymMatrix2(self.a11 - other.a11, self.a12 - other.a12, self.a22 - other.a22)

    def as_array(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a12, self.a22]])


def covariance_matrix(m: MomentSet) -> SymMatrix2:
    return SymMatrix2(
        a11=m.mean_a2 - m.mean_a**2,
        a12=m.mean_ab - m.mean_a * m.mean_b,
        a22=m.mean_b2 - m.mean_b**2,
    )


def bound_particle(m: MomentSet) -> SymMatrix2:
    """E(M+N)/4 * [[1, -1], [-1, 1]]"""
    quarter = (m.mean_a + m.mean_b) / 4
    return SymMatrix2(quarter, -quarter, quarter)


def bound_wave(m: MomentSet) -> SymMatrix2:
    """diag(E(M), E(N))"""
    return SymMatrix2(m.mean_a, 0.0, m.mean_b)


def bound(m: MomentSet, picture: Picture) -> SymMatrix2:
    return bound_wave(m) if Picture(picture) == Picture.wave else bound_particle(m)


def _radius(s: SymMatrix2) -> float:
    return math.hypot((s.a11 - s.a22) / 2, s.a12)


def min_eigenvalue(s: SymMatrix2) -> float:
    """Smaller eigenvalue, in closed form. The sign is what matters, so no iterative solver."""
    return (s.a11 + s.a22) / 2 - _radius(s)


def min_eigenvalue_gradient(s: SymMatrix2) -> np.ndarray:
    """(de/da11, de/da12, de/da22). At a11 == a22, a12 == 0 the one-sided
    choice (1/2, -1, 1/2) is used, the largest-magnitude derivative."""
    r = _radius(s)
    if r == 0.0:
        return np.array([0.5, -1.0, 0.5])
    half_diff = (s.a11 - s.a22) / (4 * r)
    return np.array([0.5 - half_diff, -s.a12 / r, 0.5 + half_diff])


def entries_jacobian(m: MomentSet, picture: Picture) -> np.ndarray:
    """d(a11, a12, a22 of C - B)/d(mean_a, mean_b, mean_a2, mean_b2, mean_ab), 3x5."""
    ma, mb = m.mean_a, m.mean_b
    if Picture(picture) == Picture.wave:
        return np.array(
            [
                [-2 * ma - 1, 0.0, 1.0, 0.0, 0.0],
                [-mb, -ma, 0.0, 0.0, 1.0],
                [0.0, -2 * mb - 1, 0.0, 1.0, 0.0],
            ]
        )
    return np.array(
        [
            [-2 * ma - 0.25, -0.25, 1.0, 0.0, 0.0],
            [-mb + 0.25, -ma + 0.25, 0.0, 0.0, 1.0],
            [-0.25, -2 * mb - 0.25, 0.0, 1.0, 0.0],
        ]
    )


def witness_matrix(m: MomentSet, picture: Picture) -> SymMatrix2:
    """C - B for the given picture."""
    return covariance_matrix(m) - bound(m, picture)


def moment_gradient(m: MomentSet, picture: Picture) -> np.ndarray:
    """de/d(mean_a, mean_b, mean_a2, mean_b2, mean_ab)."""
    s = witness_matrix(m, picture)
    return min_eigenvalue_gradient(s) @ entries_jacobian(m, picture)
