""" Mode preparations, truncated two-mode states and photon-number distributions.

The truncated space is the total-photon-number simplex n_A + n_B <= n_max,
stored inside an (n_max+1) x (n_max+1) matrix indexed [n_A][n_B]. Entries
outside the simplex are always zero. Every object carries its tail mass
(1 minus the retained probability) so later stages can refuse to report
results built on a truncation that is too coarse.
"""
from __future__ import annotations

import cmath
import dataclasses
import logging
import math
from enum import Enum
from typing import Union

import numpy as np
from scipy.special import gammaln

from src import settings
from src.errors import InvalidParameter, TruncationTooSmall

logger = logging.getLogger(__name__)


class ModeKind(str, Enum):
    vacuum = "vacuum"
    coherent = "coherent"
    fock = "fock"
    squeezed = "squeezed"
    # mixed state, only meaningful for the classical samplers
    thermal = "thermal"


PURE_KINDS = (ModeKind.vacuum, ModeKind.coherent, ModeKind.fock, ModeKind.squeezed)


def _check_finite(name: str, value: Union[float, complex]) -> None:
    if not cmath.isfinite(value):
        message = f"{name}={value} is not finite"
        logger.error(message)
        raise InvalidParameter(message)


@dataclasses.dataclass(frozen=True)
class ModePreparation:
    """Input preparation of one optical mode"""

    kind: ModeKind
    amplitude: complex = 0j  # coherent
    n: int = 0  # fock
    r: float = 0.0  # squeezed
    phi: float = 0.0  # squeezed
    nbar: float = 0.0  # thermal

    def __post_init__(self):
        object.__setattr__(self, "kind", ModeKind(self.kind))
        _check_finite("amplitude", self.amplitude)
        _check_finite("r", self.r)
        _check_finite("phi", self.phi)
        _check_finite("nbar", self.nbar)
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 0:
            raise InvalidParameter(f"fock n must be a nonnegative integer, got {self.n}")
        if self.r < 0:
            raise InvalidParameter(f"squeezing r must be >= 0, got {self.r}")
        if self.nbar < 0:
            raise InvalidParameter(f"thermal nbar must be >= 0, got {self.nbar}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "amplitude", complex(self.amplitude))

    @staticmethod
    def vacuum() -> ModePreparation:
        return ModePreparation(ModeKind.vacuum)

    @staticmethod
    def coherent(alpha: complex) -> ModePreparation:
        return ModePreparation(ModeKind.coherent, amplitude=alpha)

    @staticmethod
    def fock(n: int) -> ModePreparation:
        return ModePreparation(ModeKind.fock, n=n)

    @staticmethod
    def squeezed(r: float, phi: float = 0.0) -> ModePreparation:
        return ModePreparation(ModeKind.squeezed, r=r, phi=phi)

    @staticmethod
    def thermal(nbar: float) -> ModePreparation:
        return ModePreparation(ModeKind.thermal, nbar=nbar)

    @property
    def is_pure(self) -> bool:
        return self.kind in PURE_KINDS

    @property
    def mean_photons(self) -> float:
        if self.kind == ModeKind.coherent:
            return abs(self.amplitude) ** 2
        if self.kind == ModeKind.fock:
            return float(self.n)
        if self.kind == ModeKind.squeezed:
            return math.sinh(self.r) ** 2
        if self.kind == ModeKind.thermal:
            return self.nbar
        return 0.0

    def __str__(self) -> str:
        if self.kind == ModeKind.coherent:
            a = self.amplitude
            return f"coherent(alpha={a.real!r}{a.imag:+}j)"
        if self.kind == ModeKind.fock:
            return f"fock(n={self.n})"
        if self.kind == ModeKind.squeezed:
            return f"squeezed(r={self.r!r}, phi={self.phi!r})"
        if self.kind == ModeKind.thermal:
            return f"thermal(nbar={self.nbar!r})"
        return "vacuum"


def _freeze(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def _simplex_mask(rows: int, cols: int, n_max: int) -> np.ndarray:
    m, n = np.indices((rows, cols))
    return (m + n) <= n_max


@dataclasses.dataclass(frozen=True, eq=False)
class TwoModeState:
    """Pure two-mode state, amplitudes[n_A][n_B] on the simplex n_A + n_B <= n_max"""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.ndim != 2 or amps.shape[0] != amps.shape[1]:
            raise InvalidParameter(f"amplitudes must be square, got {amps.shape}")
        if not np.all(np.isfinite(amps)):
            raise InvalidParameter("amplitudes contain non-finite entries")
        n_max = amps.shape[0] - 1
        if np.any(amps[~_simplex_mask(n_max + 1, n_max + 1, n_max)] != 0):
            raise InvalidParameter("amplitudes outside n_A + n_B <= n_max must vanish")
        object.__setattr__(self, "amplitudes", _freeze(amps))

    @property
    def n_max(self) -> int:
        return self.amplitudes.shape[0] - 1

    @property
    def norm2(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    @property
    def tail(self) -> float:
        return max(0.0, 1.0 - self.norm2)


@dataclasses.dataclass(frozen=True, eq=False)
class JointNumberDistribution:
    """Joint photon-number statistics p[n_A][n_B] at the detectors"""

    probs: np.ndarray

    def __post_init__(self):
        probs = np.array(self.probs, dtype=float)
        if probs.ndim != 2:
            raise InvalidParameter(f"probs must be a matrix, got shape {probs.shape}")
        if not np.all(np.isfinite(probs)):
            raise InvalidParameter("probs contain non-finite entries")
        if np.any(probs < 0):
            if probs.min() < -1e-15:
                raise InvalidParameter(f"negative probability {probs.min()}")
            probs = np.clip(probs, 0.0, None)
        if probs.sum() > 1.0 + 1e-9:
            raise InvalidParameter(f"probabilities sum to {probs.sum()} > 1")
        object.__setattr__(self, "probs", _freeze(probs))

    @property
    def n_max(self) -> int:
        return max(self.probs.shape) - 1

    @property
    def tail(self) -> float:
        return max(0.0, 1.0 - float(self.probs.sum()))

    def marginal_a(self) -> np.ndarray:
        return self.probs.sum(axis=1)

    def marginal_b(self) -> np.ndarray:
        return self.probs.sum(axis=0)


def single_mode_amplitudes(prep: ModePreparation, n_max: int) -> np.ndarray:
    """Fock amplitudes a_0..a_{n_max} of a pure single-mode preparation.

    Coherent and squeezed expansions are evaluated in log space, so large
    amplitudes do not underflow the vacuum coefficient.
    """
    if n_max < 0:
        raise InvalidParameter(f"n_max must be >= 0, got {n_max}")
    if not prep.is_pure:
        message = f"{prep.kind.value} is a mixed state and has no Fock amplitudes"
        logger.error(message)
        raise InvalidParameter(message)

    amps = np.zeros(n_max + 1, dtype=complex)
    n = np.arange(n_max + 1)

    if prep.kind == ModeKind.vacuum:
        amps[0] = 1.0
    elif prep.kind == ModeKind.fock:
        if prep.n <= n_max:
            amps[prep.n] = 1.0
    elif prep.kind == ModeKind.coherent:
        alpha = prep.amplitude
        if alpha == 0:
            amps[0] = 1.0
        else:
            log_mod = -abs(alpha) ** 2 / 2 + n * math.log(abs(alpha)) - gammaln(n + 1) / 2
            amps = np.exp(log_mod + 1j * n * cmath.phase(alpha))
    elif prep.kind == ModeKind.squeezed:
        if prep.r == 0:
            amps[0] = 1.0
        else:
            # a_{2k} = (-e^{i phi} tanh r)^k sqrt((2k)!) / (2^k k! sqrt(cosh r))
            k = np.arange(n_max // 2 + 1)
            log_mod = (
                -0.5 * math.log(math.cosh(prep.r))
                + k * math.log(math.tanh(prep.r))
                + 0.5 * gammaln(2 * k + 1)
                - k * math.log(2.0)
                - gammaln(k + 1)
            )
            amps[2 * k] = np.exp(log_mod + 1j * k * (math.pi + prep.phi))

    return amps


def _product_state(prep_a: ModePreparation, prep_b: ModePreparation, n_max: int) -> np.ndarray:
    a = single_mode_amplitudes(prep_a, n_max)
    b = single_mode_amplitudes(prep_b, n_max)
    psi = np.outer(a, b)
    psi[~_simplex_mask(n_max + 1, n_max + 1, n_max)] = 0.0
    return psi


def prepare_two_mode(
    prep_a: ModePreparation,
    prep_b: ModePreparation,
    n_max: int,
    tau: float = settings.TAU,
) -> TwoModeState:
    """Product state a_m * b_n truncated to m + n <= n_max.

    Raises:
        TruncationTooSmall: when the discarded probability exceeds tau.
        InvalidParameter: for non-finite inputs, mixed preparations or bad cutoffs.
    """
    logger.debug(f"prep_a={prep_a}, prep_b={prep_b}, n_max={n_max}, tau={tau}")
    if not (tau > 0 and math.isfinite(tau)):
        raise InvalidParameter(f"tau must be a positive number, got {tau}")
    if isinstance(n_max, bool) or int(n_max) != n_max or n_max < 0:
        raise InvalidParameter(f"n_max must be a nonnegative integer, got {n_max}")

    state = TwoModeState(_product_state(prep_a, prep_b, int(n_max)))
    if state.tail > tau:
        logger.error(f"truncation too small: tail={state.tail}, n_max={n_max}")
        raise TruncationTooSmall(state.tail, tau, int(n_max))
    return state


def required_cutoff(
    prep_a: ModePreparation,
    prep_b: ModePreparation,
    tau: float = settings.TAU,
    limit: int = settings.N_MAX_LIMIT,
) -> int:
    """Smallest n_max whose total-photon-number tail is at most tau."""
    pa = np.abs(single_mode_amplitudes(prep_a, limit)) ** 2
    pb = np.abs(single_mode_amplitudes(prep_b, limit)) ** 2
    total = np.convolve(pa, pb)[: limit + 1]
    tails = 1.0 - np.cumsum(total)
    hits = np.flatnonzero(tails <= tau)
    if hits.size == 0:
        logger.error(f"no cutoff up to {limit} reaches tau={tau}")
        raise TruncationTooSmall(float(tails[-1]), tau, limit)
    n_max = int(hits[0])
    logger.debug(f"n_max={n_max}")
    return n_max


def number_distribution(state: TwoModeState) -> JointNumberDistribution:
    return JointNumberDistribution(np.abs(state.amplitudes) ** 2)


def tail_mass(state_or_dist: Union[TwoModeState, JointNumberDistribution]) -> float:
    """1 minus the probability retained inside the truncation."""
    return state_or_dist.tail


def tmsv_distribution(q: float, n_max: int, tau: float = settings.TAU) -> JointNumberDistribution:
    """Exact two-mode squeezed vacuum statistics p_{m,n} = delta_{m,n} (1-q) q^m."""
    if not (0 < q < 1):
        raise InvalidParameter(f"q must lie in (0, 1), got {q}")
    m = np.arange(n_max // 2 + 1)
    probs = np.zeros((n_max + 1, n_max + 1))
    probs[m, m] = (1 - q) * q**m
    dist = JointNumberDistribution(probs)
    if dist.tail > tau:
        raise TruncationTooSmall(dist.tail, tau, n_max)
    return dist


def check_tail(dist: JointNumberDistribution, tau: float) -> None:
    """Truncation guard shared by the downstream stages."""
    if dist.tail > tau:
        logger.error(f"accumulated tail mass {dist.tail} exceeds tau={tau}")
        raise TruncationTooSmall(dist.tail, tau, dist.n_max)
