""" Factorial moments of click statistics and the lowest-order estimator of
normal-ordered photon moments, with its systematic-error bound.

M_{m_A,m_B} = sum_k C(k_A, m_A) C(k_B, m_B) / (C(D, m_A) C(D, m_B)) c_{k_A,k_B}
approximates <:n_A^{m_A} n_B^{m_B}:> / D^{m_A+m_B} at low intensities.
"""
from __future__ import annotations

import dataclasses
import logging
from typing import Mapping, Union

import numpy as np
from scipy.special import comb

from src.detector.clicks import ClickDistribution, ClickHistogram
from src.errors import InvalidParameter, MissingOrder, OrderTooHigh
from src.fock_core.moments import NORMAL_ORDER_JACOBIAN, MomentSet

logger = logging.getLogger(__name__)

Order = tuple[int, int]

# Orders the estimator reads: first and second moments plus two more for the bias bound
MAX_TOTAL_ORDER = 4


@dataclasses.dataclass(frozen=True)
class FactorialMomentEstimate:
    value: float
    random_err: float
    order: Order


def binomial_weights(d: int, m: int) -> np.ndarray:
    """C(k, m) / C(D, m) for k = 0..D."""
    if m < 0:
        raise InvalidParameter(f"order must be >= 0, got {m}")
    if m > d:
        raise OrderTooHigh(f"order {m} exceeds d_bins={d}")
    k = np.arange(d + 1)
    return comb(k, m) / comb(d, m)


def factorial_moment(
    c: Union[ClickDistribution, ClickHistogram], m_a: int, m_b: int
) -> FactorialMomentEstimate:
    """M_{m_a,m_b} of an exact distribution or of a histogram.

    For a histogram the per-shot statistic w_a[k_A] w_b[k_B] lies in [0, 1]
    and random_err is its standard error of the mean.
    """
    w_a = binomial_weights(c.d_bins, m_a)
    w_b = binomial_weights(c.d_bins, m_b)
    per_cell = np.outer(w_a, w_b)

    if isinstance(c, ClickHistogram):
        if c.shots == 0:
            raise InvalidParameter("empty histogram")
        probs = c.probs
        value = float(np.sum(per_cell * probs))
        random_err = 0.0
        if c.shots > 1:
            variance = float(np.sum(per_cell**2 * probs)) - value**2
            variance = max(0.0, variance) * c.shots / (c.shots - 1)
            random_err = float(np.sqrt(variance / c.shots))
        return FactorialMomentEstimate(value, random_err, (m_a, m_b))

    return FactorialMomentEstimate(float(np.sum(per_cell * c.probs)), 0.0, (m_a, m_b))


def correction_orders(max_total: int = MAX_TOTAL_ORDER) -> list[Order]:
    return [(i, j) for i in range(max_total + 1) for j in range(max_total + 1 - i)]


def factorial_moments(
    c: Union[ClickDistribution, ClickHistogram], max_total: int = MAX_TOTAL_ORDER
) -> dict[Order, FactorialMomentEstimate]:
    """All orders with m_A + m_B <= max_total that the detector can resolve."""
    return {
        (i, j): factorial_moment(c, i, j)
        for i, j in correction_orders(max_total)
        if i <= c.d_bins and j <= c.d_bins
    }


MomentMap = Mapping[Order, Union[float, FactorialMomentEstimate]]


def _get(m_set: MomentMap, order: Order) -> float:
    try:
        value = m_set[order]
    except KeyError:
        raise MissingOrder(f"factorial moment of order {order} is required") from None
    if isinstance(value, FactorialMomentEstimate):
        return value.value
    return float(value)


def _leading_bound(m_set: MomentMap, d: int, m_a: int, m_b: int) -> float:
    """(D^{m_A+m_B}/2) [m_A M_{m_A+1,m_B} + m_B M_{m_A,m_B+1}]"""
    total = 0.0
    if m_a:
        total += m_a * _get(m_set, (m_a + 1, m_b))
    if m_b:
        total += m_b * _get(m_set, (m_a, m_b + 1))
    return float(d) ** (m_a + m_b) / 2 * total


def _upper_moment(m_set: MomentMap, d: int, order: Order) -> float:
    """D^{i+j} M_{i,j} raised by its own leading bias term when available."""
    i, j = order
    estimate = float(d) ** (i + j) * _get(m_set, order)
    try:
        return estimate + _leading_bound(m_set, d, i, j)
    except MissingOrder:
        return estimate


def systematic_error(m_set: MomentMap, d: int, m_a: int, m_b: int) -> float:
    """Bound on |<:n_A^{m_A} n_B^{m_B}:> - D^{m_A+m_B} M_{m_A,m_B}|.

    The leading bias is (1/2D) [m_A <:n_A^{m_A+1} n_B^{m_B}:> + m_B <:n_A^{m_A} n_B^{m_B+1}:>].
    The higher normal-ordered moments inside it are taken as their click
    estimate plus that estimate's own leading bias, which keeps the bound
    above the true bias where third-order terms would otherwise exceed it.
    Falls back to the plain leading form when the extra orders are absent.

    Raises:
        MissingOrder: when the next-order moments are not in m_set.
    """
    if m_a == 0 and m_b == 0:
        return 0.0
    total = 0.0
    if m_a:
        _get(m_set, (m_a + 1, m_b))
        total += m_a * _upper_moment(m_set, d, (m_a + 1, m_b))
    if m_b:
        _get(m_set, (m_a, m_b + 1))
        total += m_b * _upper_moment(m_set, d, (m_a, m_b + 1))
    return max(0.0, total / (2 * d))


REQUIRED_ORDERS: list[Order] = [(1, 0), (0, 1), (2, 0), (0, 2), (1, 1)]


def moments_from_clicks(m_set: MomentMap, d: int) -> MomentSet:
    """Photon moments from factorial moments of the clicks, using
    :n: = n and :n^2: = n(n-1). order_sys_err bounds the bias of each
    normal-ordered moment, sys_err the resulting bias of each raw moment."""
    for order in REQUIRED_ORDERS:
        _get(m_set, order)
    m10, m01 = _get(m_set, (1, 0)), _get(m_set, (0, 1))
    m20, m02, m11 = _get(m_set, (2, 0)), _get(m_set, (0, 2)), _get(m_set, (1, 1))

    order_sys_err = np.array(
        [
            systematic_error(m_set, d, 1, 0),
            systematic_error(m_set, d, 0, 1),
            systematic_error(m_set, d, 2, 0),
            systematic_error(m_set, d, 0, 2),
            systematic_error(m_set, d, 1, 1),
        ]
    )
    return MomentSet(
        mean_a=d * m10,
        mean_b=d * m01,
        mean_a2=d**2 * m20 + d * m10,
        mean_b2=d**2 * m02 + d * m01,
        mean_ab=d**2 * m11,
        sys_err=NORMAL_ORDER_JACOBIAN @ order_sys_err,
        order_sys_err=order_sys_err,
    )
