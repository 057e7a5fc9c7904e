"""Black-Scholes closed form and implied volatility by bisection."""

import math

from scipy.special import ndtr

from ..errors import DomainError, NumericalError

__all__ = ["price_black_scholes", "price_black_scholes_put", "implied_vol"]


def price_black_scholes(s, k, r, sigma, t):
    """European call value.

    The zero-variance limit ``sigma * sqrt(t) -> 0`` returns the discounted
    intrinsic value ``max(s - k exp(-r t), 0)``.
    """
    if s <= 0 or k <= 0 or t < 0 or sigma < 0:
        raise DomainError("price_black_scholes needs s, k > 0 and sigma, t >= 0")
    disc = k * math.exp(-r * t)
    sd = sigma * math.sqrt(t)
    if sd < 1e-300:
        return max(s - disc, 0.0)
    d1 = (math.log(s / k) + r * t) / sd + 0.5 * sd
    return float(s * ndtr(d1) - disc * ndtr(d1 - sd))


def price_black_scholes_put(s, k, r, sigma, t):
    return price_black_scholes(s, k, r, sigma, t) - s + k * math.exp(-r * t)


def implied_vol(price, s, k, r, t, lo=1e-9, hi=10.0, tol=1e-8, max_iter=200):
    """Call implied volatility, bisected until the bracket is narrower than ``tol``."""
    p_lo = price_black_scholes(s, k, r, lo, t)
    p_hi = price_black_scholes(s, k, r, hi, t)
    slack = 1e-12 * max(1.0, p_hi)  # prices at the floor can sit a rounding step below it
    if not p_lo - slack <= price <= p_hi + slack:
        raise NumericalError(
            f"price {price!r} outside the attainable range [{p_lo:.6g}, {p_hi:.6g}]")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if price_black_scholes(s, k, r, mid, t) < price:
            lo = mid
        else:
            hi = mid
        if hi - lo < tol:
            break
    return 0.5 * (lo + hi)
