"""Fourier modes of the pricing equation.

Transforming ``V(t, x, sigma)`` in ``t`` and ``x = log(S/K)`` with duals
``phi`` and ``rho`` leaves, per mode,

    A s^2 F'' + B s F' + (i(phi + rho r - s^2 rho/2) - s^2 rho^2/2 - r) F = 0

with ``A = H k^2 delta^(2H-3)`` and ``B = (k/delta)(k H delta^(2H-2) - nu)``.
``F(s) = s^chi Z_xi(zeta s)`` solves it, ``Z`` any cylinder function, when

    chi    = nu / (2 H k delta^(2H-2))
    zeta^2 = -(i rho + rho^2) / (2A)
    xi^2   = chi^2 + (r - i(phi + rho r)) / A.

The sign of the last term of ``xi^2`` is the one that makes the substitution
exact; ``literal=True`` in :func:`mode_constants` gives the opposite sign for
comparison (it does not solve the mode equation unless ``r = phi + rho r = 0``).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from .bessel import besselj, neumann
from .coefficients import sigma_diffusion, sigma_drift

__all__ = ["ModeConstants", "mode_constants", "bessel_mode", "mode_equation_terms",
           "verify_mode_ode"]


@dataclass(frozen=True)
class ModeConstants:
    chi: float
    xi_sq: complex
    zeta_sq: complex

    @property
    def xi(self):
        return cmath.sqrt(self.xi_sq)

    @property
    def zeta(self):
        return cmath.sqrt(self.zeta_sq)

    def to_dict(self):
        return {"chi": self.chi, "xi_sq": [self.xi_sq.real, self.xi_sq.imag],
                "zeta_sq": [self.zeta_sq.real, self.zeta_sq.imag]}


def mode_constants(rho, phi, params, r, nu, literal=False):
    """``(chi, xi^2, zeta^2)`` of mode ``(rho, phi)``."""
    if params.k <= 0:
        raise DomainError("mode constants need k > 0; with k = 0 the equation is Black-Scholes")
    a = sigma_diffusion(params)
    h, k, d = params.hurst, params.k, params.delta
    chi = nu / (2.0 * h * k * d ** (2.0 * h - 2.0))
    shift = (r - 1j * (phi + rho * r)) / a
    xi_sq = chi**2 - shift if literal else chi**2 + shift
    zeta_sq = -(1j * rho + rho**2) / (2.0 * a)
    return ModeConstants(float(chi), complex(xi_sq), complex(zeta_sq))


def bessel_mode(sigma, mc, c1=1.0, c2=0.0):
    """``sigma^chi (c1 J_xi(zeta sigma) + c2 N_xi(zeta sigma))``.

    For ``zeta = 0`` the cylinder functions degenerate and the mode is the
    Euler solution ``sigma^chi (c1 sigma^xi + c2 sigma^-xi)``.
    """
    if sigma <= 0:
        raise DomainError(f"sigma must be positive, got {sigma!r}")
    if c1 == 0 and c2 == 0:
        return 0j
    xi, zeta = mc.xi, mc.zeta
    lead = sigma**mc.chi
    if zeta == 0:
        return lead * (c1 * sigma**xi + c2 * sigma ** (-xi))
    z = zeta * sigma
    out = 0j
    if c1 != 0:
        out += c1 * besselj(xi, z)
    if c2 != 0:
        out += c2 * neumann(xi, z)
    return lead * out


def mode_equation_terms(f, df, d2f, sigma, params, r, nu, rho, phi):
    """The three terms of the mode equation at ``sigma``."""
    a = sigma_diffusion(params)
    b = sigma_drift(params, nu)
    s2 = sigma * sigma
    c = 1j * (phi + rho * r - s2 * rho / 2.0) - s2 * rho**2 / 2.0 - r
    return a * s2 * d2f, b * sigma * df, c * f


def _derivatives(fun, s, h):
    f = [fun(s + j * h) for j in (-2, -1, 0, 1, 2)]
    d1 = (f[0] - 8 * f[1] + 8 * f[3] - f[4]) / (12 * h)
    d2 = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h)
    return f[2], d1, d2


def verify_mode_ode(mc, params, r, nu, rho, phi, sigma_grid, c1=1.0, c2=1.0, rel_step=0.02):
    """Largest mode-equation residual on ``sigma_grid`` relative to the largest term.

    Derivatives are fourth-order central differences at steps ``h`` and
    ``h/2``, combined by Richardson extrapolation.
    """
    def fun(s):
        return bessel_mode(s, mc, c1, c2)

    worst = 0.0
    for s in np.asarray(sigma_grid, dtype=float):
        h = rel_step * s
        f, d1h, d2h = _derivatives(fun, s, h)
        _, d1q, d2q = _derivatives(fun, s, h / 2)
        d1 = (16 * d1q - d1h) / 15
        d2 = (16 * d2q - d2h) / 15
        terms = mode_equation_terms(f, d1, d2, s, params, r, nu, rho, phi)
        scale = max(abs(t) for t in terms)
        if scale == 0:
            continue
        worst = max(worst, abs(sum(terms)) / scale)
    return worst
