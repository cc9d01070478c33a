""" First and second photon-number moments, exact or estimated """
from __future__ import annotations

import dataclasses
import logging
from typing import Optional

import numpy as np

from src.errors import InvalidParameter
from src.fock_core.states import JointNumberDistribution

logger = logging.getLogger(__name__)

# Order of the moments in every 5-vector (random_cov, sys_err, gradients)
MOMENT_NAMES = ("mean_a", "mean_b", "mean_a2", "mean_b2", "mean_ab")

VARIANCE_TOLERANCE = 1e-9

# d(moments)/d(<:n_A:>, <:n_B:>, <:n_A^2:>, <:n_B^2:>, <:n_A n_B:>); E(M^2) = <:n_A^2:> + E(M)
NORMAL_ORDER_JACOBIAN = np.array(
    [
        [1.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0, 0.0],
        [1.0, 0.0, 1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 1.0],
    ]
)
NORMAL_ORDER_JACOBIAN.setflags(write=False)


@dataclasses.dataclass(frozen=True, eq=False)
class MomentSet:
    """E(M), E(N), E(M^2), E(N^2), E(MN) with optional uncertainties"""

    mean_a: float
    mean_b: float
    mean_a2: float
    mean_b2: float
    mean_ab: float
    random_cov: Optional[np.ndarray] = None  # 5x5, in MOMENT_NAMES order
    sys_err: Optional[np.ndarray] = None  # 5, nonnegative bounds
    # bounds on the normal-ordered moments, each estimated from its own factorial order
    order_sys_err: Optional[np.ndarray] = None

    def __post_init__(self):
        values = self.as_vector()
        if not np.all(np.isfinite(values)):
            raise InvalidParameter(f"non-finite moments {values}")
        for second, first in ((self.mean_a2, self.mean_a), (self.mean_b2, self.mean_b)):
            if second < first**2 - VARIANCE_TOLERANCE * (1.0 + abs(second)):
                raise InvalidParameter(f"negative variance: E(X^2)={second}, E(X)={first}")

        if self.random_cov is not None:
            cov = np.array(self.random_cov, dtype=float)
            if cov.shape != (5, 5) or not np.allclose(cov, cov.T):
                raise InvalidParameter("random_cov must be a symmetric 5x5 matrix")
            cov.setflags(write=False)
            object.__setattr__(self, "random_cov", cov)
        for name in ("sys_err", "order_sys_err"):
            if getattr(self, name) is not None:
                bounds = np.array(getattr(self, name), dtype=float)
                if bounds.shape != (5,) or np.any(bounds < 0):
                    raise InvalidParameter(f"{name} must be 5 nonnegative bounds")
                bounds.setflags(write=False)
                object.__setattr__(self, name, bounds)

    def as_vector(self) -> np.ndarray:
        return np.array([getattr(self, name) for name in MOMENT_NAMES], dtype=float)

    @property
    def mean_total(self) -> float:
        return self.mean_a + self.mean_b

    @property
    def mean_total_err(self) -> float:
        """Random standard error of E(M+N)."""
        if self.random_cov is None:
            return 0.0
        return float(np.sqrt(max(0.0, self.random_cov[0, 0] + self.random_cov[1, 1] + 2 * self.random_cov[0, 1])))

    @staticmethod
    def from_vector(
        values,
        random_cov: Optional[np.ndarray] = None,
        sys_err: Optional[np.ndarray] = None,
        order_sys_err: Optional[np.ndarray] = None,
    ) -> MomentSet:
        return MomentSet(
            *(float(v) for v in values), random_cov=random_cov, sys_err=sys_err, order_sys_err=order_sys_err
        )

    @staticmethod
    def zero() -> MomentSet:
        return MomentSet(0.0, 0.0, 0.0, 0.0, 0.0)


def photon_moments(dist: JointNumberDistribution) -> MomentSet:
    """Exact moments of a photon-number distribution, no uncertainties."""
    n_a = np.arange(dist.probs.shape[0], dtype=float)
    n_b = np.arange(dist.probs.shape[1], dtype=float)
    p_a = dist.marginal_a()
    p_b = dist.marginal_b()
    return MomentSet(
        mean_a=float(n_a @ p_a),
        mean_b=float(n_b @ p_b),
        mean_a2=float((n_a**2) @ p_a),
        mean_b2=float((n_b**2) @ p_b),
        mean_ab=float(n_a @ dist.probs @ n_b),
    )
