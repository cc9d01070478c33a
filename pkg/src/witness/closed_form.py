""" Closed-form witnesses behind a 50:50 beam splitter with loss eta """
import cmath
import logging
import math

from src.errors import InvalidParameter

logger = logging.getLogger(__name__)


def _check_eta(eta: float) -> None:
    if not (math.isfinite(eta) and 0.0 <= eta <= 1.0):
        raise InvalidParameter(f"eta={eta} must lie in [0, 1]")


def analytic_tmsv(q: float, eta: float) -> tuple[float, float, float]:
    """(e_wave, e_part, mean_total) of a lossy two-mode squeezed vacuum.

    Both witnesses equal -eta^2 q/(1-q) = -(eta/2) E(M+N).
    """
    if not (0.0 < q < 1.0):
        message = f"q={q} must lie in (0, 1)"
        logger.error(message)
        raise InvalidParameter(message)
    _check_eta(eta)
    e = -(eta**2) * q / (1 - q)
    return e, e, 2 * eta * q / (1 - q)


def analytic_coherent(alpha: complex, beta: complex, theta: float, eta: float) -> tuple[float, float]:
    """(e_wave, e_part) for coherent |alpha, beta>; e_wave is always 0."""
    for value in (alpha, beta, theta):
        if not cmath.isfinite(value):
            raise InvalidParameter(f"non-finite input {value}")
    _check_eta(eta)
    intensity = abs(alpha) ** 2 + abs(beta) ** 2
    if intensity == 0:
        return 0.0, 0.0
    overlap = (cmath.exp(1j * theta) * beta * alpha.conjugate()).real
    ratio = 4 * overlap / intensity
    return 0.0, eta * intensity / 4 * (1 - math.sqrt(1 + ratio**2))


def analytic_fock(m: int, n: int, eta: float) -> tuple[float, float]:
    """(e_wave, e_part) for the photon-number state |m, n>."""
    if m < 0 or n < 0:
        raise InvalidParameter(f"photon numbers must be >= 0, got ({m}, {n})")
    _check_eta(eta)
    e_wave = -(eta**2) * (m + n) / 2
    e_part = min(eta**2 * m * n, eta * (1 - eta) * (m + n) / 2)
    return e_wave, e_part
