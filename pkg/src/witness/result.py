""" WitnessResult and the evaluation of both witnesses on a MomentSet """
from __future__ import annotations

import dataclasses
import logging

import numpy as np

from src.fock_core.moments import NORMAL_ORDER_JACOBIAN, MomentSet
from src.witness.matrices import Picture, min_eigenvalue, moment_gradient, witness_matrix

logger = logging.getLogger(__name__)


def significance(e: float, sigma: float) -> float:
    """Distance below zero in standard deviations; 0 unless e < 0 and sigma > 0."""
    if e < 0 and sigma > 0:
        return abs(e) / sigma
    return 0.0


@dataclasses.dataclass(frozen=True)
class WitnessResult:
    """Both witnesses; significances are |e| over the total error (random + systematic)."""

    e_wave: float
    e_part: float
    err_wave_random: float = 0.0
    err_part_random: float = 0.0
    err_wave_sys: float = 0.0
    err_part_sys: float = 0.0
    significance_wave: float = 0.0
    significance_part: float = 0.0

    def __post_init__(self):
        for name in ("err_wave_random", "err_part_random", "err_wave_sys", "err_part_sys"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")

    @property
    def err_wave_total(self) -> float:
        return self.err_wave_random + self.err_wave_sys

    @property
    def err_part_total(self) -> float:
        return self.err_part_random + self.err_part_sys

    @property
    def significance_wave_random(self) -> float:
        return significance(self.e_wave, self.err_wave_random)

    @property
    def significance_part_random(self) -> float:
        return significance(self.e_part, self.err_part_random)


def propagate(m: MomentSet, picture: Picture) -> tuple[float, float]:
    """(random, systematic) error of the witness of `picture`.

    Random: sqrt(g^T cov g), the delta method with the closed-form gradient g.
    Systematic: sum |g_i| sys_i, a worst-case interval bound. When the moments
    carry order_sys_err the sum runs over the normal-ordered moments, whose
    biases are bounded independently; E(M^2) shares the bias of E(M).
    """
    g = moment_gradient(m, picture)
    random_err = 0.0
    if m.random_cov is not None:
        random_err = float(np.sqrt(max(0.0, g @ m.random_cov @ g)))
    sys_err = 0.0
    if m.order_sys_err is not None:
        sys_err = float(np.abs(g @ NORMAL_ORDER_JACOBIAN) @ m.order_sys_err)
    elif m.sys_err is not None:
        sys_err = float(np.abs(g) @ m.sys_err)
    return random_err, sys_err


def witness_pair(m: MomentSet) -> WitnessResult:
    """e_wave = min eig(C - B_wave), e_part = min eig(C - B_part), with errors
    when the moments carry them."""
    e_wave = min_eigenvalue(witness_matrix(m, Picture.wave))
    e_part = min_eigenvalue(witness_matrix(m, Picture.particle))
    wave_random, wave_sys = propagate(m, Picture.wave)
    part_random, part_sys = propagate(m, Picture.particle)
    return WitnessResult(
        e_wave=e_wave,
        e_part=e_part,
        err_wave_random=wave_random,
        err_part_random=part_random,
        err_wave_sys=wave_sys,
        err_part_sys=part_sys,
        significance_wave=significance(e_wave, wave_random + wave_sys),
        significance_part=significance(e_part, part_random + part_sys),
    )
