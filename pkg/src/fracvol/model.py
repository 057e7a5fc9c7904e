"""Simulation of the fractional volatility model.

Log-volatility at resolution ``delta`` is

    log sigma(t) = beta + (k/delta) * (B_H(t) - B_H(t - delta))

with ``beta = log(theta) - 0.5 * (k/delta)**2 * delta**(2H)`` so that
``E[sigma] = theta``.  The price is geometric Brownian motion driven by an
independent Brownian motion with that (piecewise constant) volatility.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, replace

import numpy as np
from scipy.signal import lfilter

from ._rng import derive_seed, generator
from .errors import ConfigurationError, DomainError
from .fbm import _fgn_block, check_hurst

__all__ = [
    "FvmParams",
    "VolatilityPath",
    "PricePath",
    "simulate_volatility",
    "simulate_mean_reverting",
    "simulate_fvm",
    "risk_neutral_paths",
    "path_seeds",
]

_BETA_RTOL = 1e-9


@dataclass(frozen=True)
class FvmParams:
    """Model parameters.

    ``theta`` is the primary volatility level; ``beta`` is derived from it.
    Use :meth:`from_beta` or :meth:`from_dict` to start from ``beta``.
    """

    mu: float = 0.0
    theta: float = 0.2
    k: float = 0.0
    delta: float = 1.0
    hurst: float = 0.5
    alpha: float = 0.0

    def __post_init__(self):
        if not self.theta > 0:
            raise DomainError(f"theta must be positive, got {self.theta!r}")
        if not self.delta > 0:
            raise DomainError(f"delta must be positive, got {self.delta!r}")
        if not self.k >= 0:
            raise DomainError(f"k must be non-negative, got {self.k!r}")
        if not self.alpha >= 0:
            raise DomainError(f"alpha must be non-negative, got {self.alpha!r}")
        check_hurst(self.hurst)

    @property
    def log_vol_variance(self):
        """Variance of the noise term: ``(k/delta)**2 * delta**(2H)``."""
        return (self.k / self.delta) ** 2 * self.delta ** (2.0 * self.hurst)

    @property
    def beta(self):
        return math.log(self.theta) - 0.5 * self.log_vol_variance

    @classmethod
    def from_beta(cls, beta, *, k, delta, hurst, mu=0.0, alpha=0.0):
        var = (k / delta) ** 2 * delta ** (2.0 * hurst)
        try:
            theta = math.exp(beta + 0.5 * var)
        except OverflowError:
            raise DomainError(f"beta={beta!r} with noise variance {var:.3g} gives an "
                              "unrepresentable theta") from None
        return cls(mu=mu, theta=theta, k=k, delta=delta,
                   hurst=hurst, alpha=alpha)

    @classmethod
    def from_dict(cls, d):
        """Build from a flat mapping; ``theta`` and/or ``beta`` may be given."""
        known = {"mu", "theta", "beta", "k", "delta", "hurst", "alpha"}
        extra = set(d) - known
        if extra:
            raise ConfigurationError(f"unknown parameter keys: {sorted(extra)}")
        for key in ("k", "delta", "hurst"):
            if key not in d:
                raise ConfigurationError(f"missing parameter {key!r}")
        try:
            base = dict(mu=float(d.get("mu", 0.0)), k=float(d["k"]),
                        delta=float(d["delta"]), hurst=float(d["hurst"]),
                        alpha=float(d.get("alpha", 0.0)))
            if "theta" in d:
                p = cls(theta=float(d["theta"]), **base)
                if "beta" in d and not math.isclose(p.beta, float(d["beta"]),
                                                    rel_tol=_BETA_RTOL, abs_tol=1e-12):
                    raise ConfigurationError(
                        f"theta={d['theta']} implies beta={p.beta!r}, "
                        f"inconsistent with beta={d['beta']}")
                return p
            if "beta" in d:
                return cls.from_beta(float(d["beta"]), **base)
        except DomainError as exc:
            raise ConfigurationError(str(exc)) from exc
        except (TypeError, ValueError) as exc:
            raise ConfigurationError(f"bad parameter value: {exc}") from exc
        raise ConfigurationError("one of 'theta' or 'beta' is required")

    def to_dict(self):
        d = asdict(self)
        d["beta"] = self.beta
        return {key: d[key] for key in ("mu", "theta", "beta", "k", "delta", "hurst", "alpha")}


@dataclass(frozen=True)
class VolatilityPath:
    times: np.ndarray
    sigmas: np.ndarray
    params: FvmParams
    seed: int


@dataclass(frozen=True)
class PricePath:
    times: np.ndarray
    prices: np.ndarray
    vol: VolatilityPath
    seed_price: int


def _log_vol_block(params, n, rng, size, vol_drift=0.0, log_sigma0=None):
    """``(size, n)`` log-volatility samples on ``t_i = i * delta``."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    p = params
    times = p.delta * np.arange(n)
    if p.k == 0.0:
        noise = np.zeros((size, n))
    else:
        g, _ = _fgn_block(p.hurst, n, p.delta, rng, size)
        noise = (p.k / p.delta) * g
    if p.alpha > 0.0:
        u0 = (p.beta if log_sigma0 is None else log_sigma0) - p.beta
        noise[:, 0] = 0.0
        decay = math.exp(-p.alpha * p.delta)
        dev = lfilter([1.0], [1.0, -decay], noise, axis=-1,
                      zi=np.full((size, 1), u0))[0]
        logs = p.beta + dev
    else:
        logs = p.beta + noise
    if vol_drift:
        logs = logs + vol_drift * times
    return times, logs


def simulate_volatility(params, n, seed, vol_drift=0.0):
    """``n`` volatility values at spacing ``params.delta``.

    With ``alpha > 0`` this delegates to :func:`simulate_mean_reverting`.
    ``vol_drift`` adds a deterministic ``vol_drift * t`` to log-volatility
    (used to mirror a market price of volatility in pricing comparisons).
    """
    if params.alpha > 0:
        return simulate_mean_reverting(params, n, seed, vol_drift=vol_drift)
    times, logs = _log_vol_block(params, n, generator(seed), 1, vol_drift)
    return VolatilityPath(times, np.exp(logs[0]), params, int(seed))


def simulate_mean_reverting(params, n, seed, log_sigma0=None, vol_drift=0.0):
    """Log-volatility relaxing toward ``beta`` at rate ``alpha`` plus fGn forcing.

    ``log s(t+d) = beta + exp(-alpha d) (log s(t) - beta) + (k/d) g(t+d)``,
    starting from ``log_sigma0`` (default ``beta``).
    """
    if params.alpha < 0:
        raise DomainError("alpha must be non-negative")
    if params.alpha == 0:
        raise DomainError("mean-reverting simulation needs alpha > 0")
    times, logs = _log_vol_block(params, n, generator(seed), 1, vol_drift, log_sigma0)
    return VolatilityPath(times, np.exp(logs[0]), params, int(seed))


def steps_per_window(delta, dt):
    ratio = delta / dt
    m = round(ratio)
    if dt <= 0 or m < 1 or not math.isclose(ratio, m, rel_tol=1e-9):
        raise ConfigurationError(
            f"delta/dt must be a positive integer, got delta={delta!r}, dt={dt!r}")
    return int(m)


def _log_price_increments(sigmas, dt, mu, z):
    return (mu - 0.5 * sigmas**2) * dt + sigmas * math.sqrt(dt) * z


def simulate_fvm(params, s0, n, dt=None, seed_vol=0, seed_price=1, vol_drift=0.0):
    """Price path of ``n`` steps of size ``dt`` (default ``delta``).

    Volatility is held constant over each ``delta`` window; the price noise
    comes from an independent stream seeded by ``seed_price``.
    """
    if not s0 > 0:
        raise DomainError(f"s0 must be positive, got {s0!r}")
    dt = params.delta if dt is None else dt
    m = steps_per_window(params.delta, dt)
    n_vol = -(-n // m)
    vol = simulate_volatility(params, n_vol, seed_vol, vol_drift=vol_drift)
    sig = np.repeat(vol.sigmas, m)[:n]
    z = generator(seed_price).standard_normal(n)
    logs = np.log(s0) + np.concatenate([[0.0], np.cumsum(_log_price_increments(sig, dt, params.mu, z))])
    prices = np.exp(logs)
    prices[0] = s0
    return PricePath(dt * np.arange(n + 1), prices, vol, int(seed_price))


def path_seeds(seed, index):
    """(volatility seed, price seed) of path ``index`` under master ``seed``."""
    return derive_seed(seed, index, 0), derive_seed(seed, index, 1)


def horizon_steps(horizon, dt):
    n = round(horizon / dt)
    if n < 1 or not math.isclose(horizon / dt, n, rel_tol=1e-9):
        raise ConfigurationError(f"horizon/dt must be a positive integer, got {horizon!r}/{dt!r}")
    return int(n)


def risk_neutral_paths(params, s0, r, horizon, n_paths, dt, seed, nu=0.0):
    """``n_paths`` independent paths with drift ``r``.

    ``nu`` shifts log-volatility by ``-nu * k / delta`` per unit time, the
    drift that the pricing equation assigns to ``log sigma``.
    """
    n = horizon_steps(horizon, dt)
    p = replace(params, mu=r)
    drift = -nu * params.k / params.delta
    out = []
    for i in range(n_paths):
        sv, sp = path_seeds(seed, i)
        out.append(simulate_fvm(p, s0, n, dt, sv, sp, vol_drift=drift))
    return out
