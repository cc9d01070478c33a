""" Theory benchmarks: closed forms and the exact Fock-space pipeline """
import logging
import math
from typing import Optional

import numpy as np

from src import settings
from src.errors import InvalidParameter, InvalidRange
from src.fock_core.beam_splitter import apply_beam_splitter
from src.fock_core.loss import apply_loss
from src.fock_core.moments import photon_moments
from src.fock_core.states import (
    JointNumberDistribution,
    ModePreparation,
    check_tail,
    number_distribution,
    prepare_two_mode,
    required_cutoff,
)
from src.models.outputs import StateFamily, TheoryPoint, ViaEnum
from src.witness.closed_form import analytic_coherent, analytic_fock, analytic_tmsv
from src.witness.result import witness_pair

logger = logging.getLogger(__name__)


def tmsv_preparations(q: float) -> tuple[ModePreparation, ModePreparation]:
    """Two squeezed inputs (phi = 0 and phi = pi, r = artanh sqrt(q)) that a
    beam splitter at theta = 0 turns into a two-mode squeezed vacuum."""
    if not (0.0 < q < 1.0):
        raise InvalidParameter(f"q={q} must lie in (0, 1)")
    r = math.atanh(math.sqrt(q))
    return ModePreparation.squeezed(r, 0.0), ModePreparation.squeezed(r, math.pi)


def q_from_mean_total(mean_total: float, eta: float) -> float:
    """Invert E(M+N) = 2 eta q/(1-q)."""
    if eta <= 0 or mean_total <= 0:
        raise InvalidRange(f"mean_total={mean_total} is unreachable with eta={eta}")
    return mean_total / (2 * eta + mean_total)


def detected_distribution(
    prep_a: ModePreparation,
    prep_b: ModePreparation,
    theta: float,
    eta_a: float,
    eta_b: float,
    tau: float = settings.TAU,
    n_max: Optional[int] = None,
) -> JointNumberDistribution:
    """Prepare, mix on the beam splitter and apply loss, exactly."""
    if n_max is None:
        n_max = required_cutoff(prep_a, prep_b, tau)
    logger.debug(f"n_max={n_max}")
    state = apply_beam_splitter(prepare_two_mode(prep_a, prep_b, n_max, tau), theta)
    dist = apply_loss(number_distribution(state), eta_a, eta_b)
    check_tail(dist, tau)
    return dist


def _pipeline_point(prep_a, prep_b, theta, eta, tau) -> tuple[float, float, float]:
    moments = photon_moments(detected_distribution(prep_a, prep_b, theta, eta, eta, tau))
    result = witness_pair(moments)
    return result.e_wave, result.e_part, moments.mean_total


def theory_point(
    state: StateFamily,
    eta: float = 1.0,
    via: ViaEnum = ViaEnum.closed_form,
    q: Optional[float] = None,
    alpha: complex = 0j,
    beta: complex = 0j,
    theta: float = 0.0,
    m: int = 0,
    n: int = 0,
    tau: float = settings.PIPELINE_TAU,
    parameter: float = 0.0,
) -> TheoryPoint:
    """Witnesses of a benchmark input, from the closed form or the pipeline."""
    state = StateFamily(state)
    via = ViaEnum(via)
    if state == StateFamily.tmsv:
        if q is None:
            raise InvalidParameter("tmsv needs q")
        label = f"tmsv(q={q!r})"
        preps = tmsv_preparations(q)
        theta = 0.0
    elif state == StateFamily.coherent:
        label = f"coherent(alpha={alpha!r}, beta={beta!r}, theta={theta!r})"
        preps = (ModePreparation.coherent(alpha), ModePreparation.coherent(beta))
    elif state == StateFamily.fock:
        label = f"fock(m={m}, n={n})"
        preps = (ModePreparation.fock(m), ModePreparation.fock(n))
    else:
        label = "vacuum"
        preps = (ModePreparation.vacuum(), ModePreparation.vacuum())

    if via == ViaEnum.pipeline:
        e_wave, e_part, mean_total = _pipeline_point(*preps, theta, eta, tau)
    elif state == StateFamily.tmsv:
        e_wave, e_part, mean_total = analytic_tmsv(q, eta)
    elif state == StateFamily.coherent:
        e_wave, e_part = analytic_coherent(alpha, beta, theta, eta)
        mean_total = eta * (abs(alpha) ** 2 + abs(beta) ** 2)
    elif state == StateFamily.fock:
        e_wave, e_part = analytic_fock(m, n, eta)
        mean_total = eta * (m + n)
    else:
        e_wave, e_part, mean_total = 0.0, 0.0, 0.0

    return TheoryPoint(
        state=label, via=via, parameter=parameter, e_wave=e_wave, e_part=e_part, mean_total=mean_total
    )


def sweep_values(family: StateFamily, start: float, stop: float, num: int) -> np.ndarray:
    """Grid of the swept parameter; Fock sweeps step through integers."""
    if num < 1 or not (math.isfinite(start) and math.isfinite(stop)) or start > stop:
        raise InvalidRange(f"bad range start={start}, stop={stop}, num={num}")
    if StateFamily(family) == StateFamily.fock:
        if start < 0 or start != int(start) or stop != int(stop):
            raise InvalidRange("fock sweeps need nonnegative integer bounds")
        return np.arange(int(start), int(stop) + 1)
    if start < 0:
        raise InvalidRange(f"start={start} must be >= 0")
    return np.linspace(start, stop, num)


def sweep(
    family: StateFamily,
    values,
    eta: float = 1.0,
    via: ViaEnum = ViaEnum.closed_form,
    by: str = "q",
    tau: float = settings.PIPELINE_TAU,
) -> list[TheoryPoint]:
    """coherent: alpha = beta, theta = 0; fock: m = n; tmsv: by q or by E(M+N) at fixed eta."""
    family = StateFamily(family)
    points = []
    for value in values:
        value = float(value)
        if family == StateFamily.coherent:
            point = theory_point(family, eta, via, alpha=value, beta=value, tau=tau, parameter=value)
        elif family == StateFamily.fock:
            point = theory_point(family, eta, via, m=int(value), n=int(value), tau=tau, parameter=value)
        elif family == StateFamily.tmsv:
            q = q_from_mean_total(value, eta) if by == "mean_total" else value
            if not (0.0 < q < 1.0):
                raise InvalidRange(f"q={q} outside (0, 1)")
            point = theory_point(family, eta, via, q=q, tau=tau, parameter=value)
        else:
            raise InvalidRange("the vacuum has nothing to sweep")
        points.append(point)
    return points
