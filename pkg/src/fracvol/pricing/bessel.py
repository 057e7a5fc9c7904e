"""Bessel functions of complex order and complex argument.

``J_nu(z) = sum_m (-1)^m (z/2)^(2m + nu) / (m! Gamma(m + nu + 1))`` summed
directly, with the leading factor formed through the complex log-Gamma so
that large orders do not overflow.  The Neumann function is built from
``J_nu`` and ``J_{-nu}`` and is therefore undefined at integer order.

The validated envelope is ``|z| <= 20`` and ``|Im nu| <= 10``.
"""

import cmath
import math

from scipy.special import loggamma

from ..errors import BesselEvaluationError, UnsupportedOrderError

__all__ = ["besselj", "neumann", "MAX_ARGUMENT", "MAX_IMAG_ORDER"]

MAX_ARGUMENT = 20.0
MAX_IMAG_ORDER = 10.0
_MAX_TERMS = 600
_EPS = 1e-17


def _check_envelope(nu, z):
    if abs(z) > MAX_ARGUMENT:
        raise BesselEvaluationError(f"|z| = {abs(z):.4g} exceeds the validated limit {MAX_ARGUMENT}")
    if abs(complex(nu).imag) > MAX_IMAG_ORDER:
        raise BesselEvaluationError(
            f"|Im nu| = {abs(complex(nu).imag):.4g} exceeds the validated limit {MAX_IMAG_ORDER}")


def _is_nonpositive_integer(w):
    return abs(w.imag) < 1e-14 and w.real <= 0 and abs(w.real - round(w.real)) < 1e-14


def besselj(nu, z):
    """``J_nu(z)`` on the principal branch of ``(z/2)**nu``."""
    nu, z = complex(nu), complex(z)
    _check_envelope(nu, z)
    if z == 0:
        if nu == 0:
            return 1.0 + 0.0j
        if nu.real > 0:
            return 0.0j
        raise BesselEvaluationError(f"J_nu(0) is unbounded for nu = {nu}")
    if _is_nonpositive_integer(nu + 1):
        # 1/Gamma(nu + 1) = 0: the series starts at m = -nu, J_{-n} = (-1)^n J_n
        n = int(round(-nu.real))
        return (-1) ** n * besselj(n, z)
    log_lead = nu * cmath.log(0.5 * z) - complex(loggamma(nu + 1.0))
    w = -0.25 * z * z
    term = 1.0 + 0.0j
    total = 1.0 + 0.0j
    for m in range(1, _MAX_TERMS):
        term *= w / (m * (m + nu))
        total += term
        if m > abs(z) and abs(term) <= _EPS * abs(total):
            break
    else:
        raise BesselEvaluationError(f"series for J_{nu}({z}) did not converge")
    return cmath.exp(log_lead) * total


def neumann(nu, z):
    """``N_nu(z) = (J_nu(z) cos(nu pi) - J_{-nu}(z)) / sin(nu pi)`` for non-integer ``nu``."""
    nu = complex(nu)
    if abs(nu.imag) < 1e-14 and abs(nu.real - round(nu.real)) < 1e-12:
        raise UnsupportedOrderError(f"integer order {nu.real:g} is not supported")
    s = cmath.sin(math.pi * nu)
    return (besselj(nu, z) * cmath.cos(math.pi * nu) - besselj(-nu, z)) / s
