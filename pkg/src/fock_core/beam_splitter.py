""" 50:50 beam splitter on the truncated two-mode Fock space.

Creation operators map as
    a^+ -> (a^+ - e^{-i theta} b^+) / sqrt(2)
    b^+ -> (e^{i theta} a^+ + b^+) / sqrt(2)
which sends coherent |alpha, beta> to
    |(alpha + e^{i theta} beta)/sqrt(2), (beta - e^{-i theta} alpha)/sqrt(2)>.

The unitary is block diagonal in the total photon number N = n_A + n_B. In
the basis |k, N-k> (k = n_A) the block is U = D exp(i pi/4 R) D^+, where R is
the real tridiagonal hopping matrix of a^+ b + a b^+ and D = diag(c^k) with
c = -i e^{i theta}. exp(i pi/4 R) does not depend on theta and is obtained
from the eigendecomposition of R, whose spectrum is -N, -N+2, ..., N.
Summing binomial expansions instead loses roughly N/2 bits to cancellation.
"""
import functools
import logging

import numpy as np
from scipy.linalg import eigh_tridiagonal

from src.fock_core.states import TwoModeState

logger = logging.getLogger(__name__)


@functools.lru_cache(maxsize=None)
def block_mixer(total: int) -> np.ndarray:
    """exp(i pi/4 R) for the sector with `total` photons, indexed [n_A_out][n_A_in]."""
    if total == 0:
        mixer = np.ones((1, 1), dtype=complex)
    else:
        k = np.arange(total)
        hopping = np.sqrt((k + 1.0) * (total - k))
        eigvals, eigvecs = eigh_tridiagonal(np.zeros(total + 1), hopping)
        mixer = (eigvecs * np.exp(0.25j * np.pi * eigvals)) @ eigvecs.T
    mixer.setflags(write=False)
    return mixer


def block_unitary(total: int, theta: float) -> np.ndarray:
    """Beam splitter restricted to the sector with `total` photons."""
    k = np.arange(total + 1)
    c = -1j * np.exp(1j * theta)
    phases = c ** (k[:, None] - k[None, :])
    return phases * block_mixer(total)


def apply_beam_splitter(state: TwoModeState, theta: float) -> TwoModeState:
    """Mix the two modes of `state` on a 50:50 beam splitter with phase theta."""
    logger.debug(f"n_max={state.n_max}, theta={theta}")
    amps = state.amplitudes
    out = np.zeros_like(amps)
    for total in range(state.n_max + 1):
        n_a = np.arange(total + 1)
        n_b = total - n_a
        sector = amps[n_a, n_b]
        if not np.any(sector):
            continue
        out[n_a, n_b] = block_unitary(total, theta) @ sector
    return TwoModeState(out)
