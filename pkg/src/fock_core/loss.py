""" Per-mode photon loss as binomial thinning of a number distribution """
import functools
import logging
import math

import numpy as np
from scipy.stats import binom

from src.errors import InvalidParameter
from src.fock_core.states import JointNumberDistribution

logger = logging.getLogger(__name__)


def _check_eta(name: str, eta: float) -> None:
    if not (math.isfinite(eta) and 0.0 <= eta <= 1.0):
        message = f"{name}={eta} must lie in [0, 1]"
        logger.error(message)
        raise InvalidParameter(message)


@functools.lru_cache(maxsize=64)
def thinning_matrix(size: int, eta: float) -> np.ndarray:
    """L[m][n] = C(n, m) eta^m (1-eta)^(n-m), the survival law of n photons."""
    if eta == 1.0:
        matrix = np.eye(size)
    elif eta == 0.0:
        matrix = np.zeros((size, size))
        matrix[0, :] = 1.0
    else:
        m, n = np.indices((size, size))
        matrix = np.where(m <= n, binom.pmf(m, n, eta), 0.0)
    matrix.setflags(write=False)
    return matrix


def apply_loss(dist: JointNumberDistribution, eta_a: float, eta_b: float) -> JointNumberDistribution:
    """Binomially thin each mode independently; normalization is preserved."""
    _check_eta("eta_a", eta_a)
    _check_eta("eta_b", eta_b)
    rows, cols = dist.probs.shape
    out = thinning_matrix(rows, float(eta_a)) @ dist.probs @ thinning_matrix(cols, float(eta_b)).T
    return JointNumberDistribution(out)
