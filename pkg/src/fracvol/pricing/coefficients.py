"""Coefficients of the pricing equation that come from the fractional calculus.

With the kernel ``phi(s, u) = H (2H - 1) |s - u|**(2H - 2)`` (valid for
1/2 < H < 1), the Malliavin derivative of one fractional-noise window is

    D_t (B_H(t) - B_H(t - delta)) = int_{t-delta}^t phi(t, v) dv = H delta**(2H - 1).
"""

from ..errors import DomainError

__all__ = [
    "malliavin_coefficient",
    "sigma_diffusion",
    "sigma_drift",
    "log_sigma_drift",
]


def _check_kernel(hurst):
    if not 0.5 < hurst < 1.0:
        raise DomainError(f"the phi-kernel needs 1/2 < H < 1, got H={hurst!r}")


def malliavin_coefficient(params):
    """``H * delta**(2H - 1)``."""
    _check_kernel(params.hurst)
    return params.hurst * params.delta ** (2.0 * params.hurst - 1.0)


def sigma_diffusion(params):
    """Coefficient of ``sigma**2 V_sigma_sigma``: ``H k**2 delta**(2H - 3)``."""
    return (params.k / params.delta) ** 2 * malliavin_coefficient(params)


def sigma_drift(params, nu):
    """Coefficient of ``sigma V_sigma``: ``(k/delta)(k H delta**(2H - 2) - nu)``."""
    _check_kernel(params.hurst)
    h, k, d = params.hurst, params.k, params.delta
    return (k / d) * (k * h * d ** (2.0 * h - 2.0) - nu)


def log_sigma_drift(params, nu):
    """Coefficient of ``V_y`` after ``y = log sigma``; equals ``-nu k / delta``."""
    return sigma_drift(params, nu) - sigma_diffusion(params)
