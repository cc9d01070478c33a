""" Moment estimation with errors, witness evaluation and the efficiency fit """
import dataclasses
import logging
from typing import Optional, Sequence

import numpy as np

from src import settings
from src.analysis.report import AnalysisReport, significance_report
from src.detector.clicks import ClickHistogram, CountHistogram, click_distribution
from src.detector.factorial import factorial_moments, moments_from_clicks
from src.errors import InsufficientData, InvalidParameter
from src.fock_core.moments import MomentSet
from src.fock_core.states import JointNumberDistribution
from src.witness.result import WitnessResult, witness_pair

logger = logging.getLogger(__name__)


def _sample_covariance(stats: np.ndarray, probs: np.ndarray, shots: int) -> np.ndarray:
    """Covariance of the mean of per-shot statistics, given per-cell values.

    stats: (cells, 5) values, probs: (cells,) empirical frequencies.
    """
    mean = probs @ stats
    centred = stats - mean
    cov = (centred * probs[:, None]).T @ centred
    return cov * shots / (shots - 1) / shots


def click_statistics(d_bins: int) -> np.ndarray:
    """Per-shot estimators of the five moments for every click outcome, shape (D+1, D+1, 5).

    Their means over a histogram equal moments_from_clicks of its factorial moments.
    """
    k = np.arange(d_bins + 1, dtype=float)
    second = d_bins * k * (k - 1) / (d_bins - 1) + k if d_bins > 1 else k
    k_a, k_b = np.meshgrid(k, k, indexing="ij")
    s_a, s_b = np.meshgrid(second, second, indexing="ij")
    return np.stack([k_a, k_b, s_a, s_b, k_a * k_b], axis=-1)


def estimate_moments(h: ClickHistogram) -> MomentSet:
    """Photon moments of a click histogram with random covariance and bias bounds.

    Raises:
        InsufficientData: for fewer than two shots.
    """
    logger.debug(f"shots={h.shots}, d_bins={h.d_bins}")
    if h.shots < 2:
        raise InsufficientData(f"need at least 2 shots, got {h.shots}")
    point = moments_from_clicks(factorial_moments(h), h.d_bins)
    stats = click_statistics(h.d_bins).reshape(-1, 5)
    cov = _sample_covariance(stats, h.probs.ravel(), h.shots)
    return MomentSet.from_vector(
        point.as_vector(), random_cov=cov, sys_err=point.sys_err, order_sys_err=point.order_sys_err
    )


def estimate_count_moments(h: CountHistogram) -> MomentSet:
    """Moments of photon counts with perfect resolution; no systematic part."""
    if h.shots < 2:
        raise InsufficientData(f"need at least 2 shots, got {h.shots}")
    m, n = np.indices(h.counts.shape)
    m = m.ravel().astype(float)
    n = n.ravel().astype(float)
    stats = np.stack([m, n, m**2, n**2, m * n], axis=-1)
    probs = h.probs.ravel()
    cov = _sample_covariance(stats, probs, h.shots)
    return MomentSet.from_vector(probs @ stats, random_cov=cov)


def witness_with_errors(m: MomentSet) -> WitnessResult:
    """Witnesses with delta-method random errors and interval systematic errors."""
    if m.random_cov is None:
        raise InvalidParameter("moments carry no random covariance")
    return witness_pair(m)


def analyze_exact(
    dist: JointNumberDistribution, d_bins: int = settings.D_BINS, tau: float = settings.TAU
) -> MomentSet:
    """Noise-free click-detector estimate of the moments of `dist`, with bias bounds."""
    clicks = click_distribution(dist, d_bins, tau)
    return moments_from_clicks(factorial_moments(clicks), d_bins)


def intensity_warnings(m: MomentSet, threshold: float = settings.INTENSITY_WARNING) -> list[str]:
    warnings = []
    if m.mean_total > threshold:
        message = (
            f"E(M+N)={m.mean_total!r} exceeds {threshold!r}; "
            "the low-intensity click estimator is degraded"
        )
        logger.warning(message)
        warnings.append(message)
    return warnings


def analyze_histogram(
    h, description: str = "", intensity_warning: float = settings.INTENSITY_WARNING
) -> AnalysisReport:
    """Full analysis of a click or count histogram into a report."""
    logger.info(f"shots={h.shots}, description={description}")
    if isinstance(h, ClickHistogram):
        moments = estimate_moments(h)
        d_bins = h.d_bins
    else:
        moments = estimate_count_moments(h)
        d_bins = None
    result = witness_with_errors(moments)

    warnings = intensity_warnings(moments, intensity_warning)
    if result.err_wave_random == 0 and result.err_part_random == 0:
        message = "zero random error; significances rest on the systematic bound alone"
        logger.warning(message)
        warnings.append(message)

    sys_total = 0.0 if moments.sys_err is None else float(moments.sys_err[0] + moments.sys_err[1])
    report = significance_report(
        result,
        moments.mean_total,
        moments.mean_total_err,
        sys_total,
        description=description,
        d_bins=d_bins,
        shots=h.shots,
        seed=h.seed,
        warnings=warnings,
    )
    logger.info("- Return")
    return report


@dataclasses.dataclass(frozen=True)
class EfficiencyFit:
    eta: float
    eta_err: float
    points: int


def fit_efficiency(
    mean_total: Sequence[float], e: Sequence[float], sigma: Optional[Sequence[float]] = None
) -> EfficiencyFit:
    """Least-squares fit of e = -(eta/2) E(M+N) through the origin.

    With sigma given (all > 0) the fit is weighted by 1/sigma^2 and eta_err
    follows from the weights; otherwise it follows from the residual scatter.
    """
    x = np.asarray(mean_total, dtype=float)
    y = np.asarray(e, dtype=float)
    if x.shape != y.shape or x.size == 0:
        raise InvalidParameter("need matching, nonempty mean_total and e")
    if np.sum(x**2) == 0:
        raise InvalidParameter("all mean_total values are zero")

    weighted = sigma is not None and np.all(np.asarray(sigma, dtype=float) > 0)
    w = 1.0 / np.asarray(sigma, dtype=float) ** 2 if weighted else np.ones_like(x)
    sxx = float(np.sum(w * x**2))
    eta = -2.0 * float(np.sum(w * x * y)) / sxx
    if weighted:
        eta_err = 2.0 / np.sqrt(sxx)
    elif x.size > 1:
        residuals = y + eta * x / 2
        eta_err = 2.0 * np.sqrt(float(np.sum(residuals**2)) / (x.size - 1) / sxx)
    else:
        eta_err = 0.0
    logger.debug(f"eta={eta}, eta_err={eta_err}")
    return EfficiencyFit(eta, float(eta_err), int(x.size))
