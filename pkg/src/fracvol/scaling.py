"""Scaling analysis of volatility series.

Raw log-volatility of the model is fractional *noise*; its small-lag
structure function looks like fBm with a very small Hurst index.  Summing
log-volatility and removing the linear trend yields a process ``R(t)`` whose
structure function scales as ``lag**(2H)`` with the true H.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DataError, DomainError, FitError
from .fbm import fgn_autocovariance

__all__ = [
    "SeriesSample",
    "StructureFunction",
    "ScalingConfig",
    "ScalingReport",
    "dyadic_lags",
    "structure_function",
    "fit_hurst",
    "integrate_logvol",
    "detrend_linear",
    "calibrate_k",
    "analyze_volatility",
    "exact_noise_structure",
]

SPACING_RTOL = 1e-6


@dataclass(frozen=True)
class SeriesSample:
    """Values on a strictly increasing, uniformly spaced time grid."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.array(self.times, dtype=float)
        v = np.array(self.values, dtype=float)
        if t.ndim != 1 or t.shape != v.shape:
            raise DataError("times and values must be 1-d and of equal length")
        if t.size >= 2:
            dt = np.diff(t)
            bad = np.flatnonzero(dt <= 0)
            if bad.size:
                raise DataError(f"times not strictly increasing at rows {list(bad + 2)}",
                                rows=bad + 2)
            med = np.median(dt)
            bad = np.flatnonzero(np.abs(dt - med) > SPACING_RTOL * med)
            if bad.size:
                raise DataError(f"non-uniform spacing at rows {list(bad + 2)}", rows=bad + 2)
        t.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    @classmethod
    def uniform(cls, values, step=1.0, start=0.0):
        values = np.asarray(values, dtype=float)
        return cls(start + step * np.arange(values.size), values)

    @property
    def delta(self):
        return float(np.median(np.diff(self.times))) if self.times.size > 1 else float("nan")

    def __len__(self):
        return self.values.size


def _as_series(series):
    return series if isinstance(series, SeriesSample) else SeriesSample.uniform(series)


@dataclass(frozen=True)
class StructureFunction:
    lags: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "lags", np.asarray(self.lags, dtype=int))
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))

    def to_dict(self):
        return {"lags": [int(x) for x in self.lags], "values": [float(x) for x in self.values]}

    @classmethod
    def from_dict(cls, d):
        return cls(d["lags"], d["values"])


def dyadic_lags(n):
    """Powers of two ``1, 2, 4, ...`` strictly below ``n / 4``."""
    lags = []
    lag = 1
    while lag < n / 4:
        lags.append(lag)
        lag *= 2
    return np.array(lags, dtype=int)


def structure_function(series, lags=None):
    """Mean squared increment over all overlapping windows, per lag."""
    x = _as_series(series).values
    n = x.size
    lags = dyadic_lags(n) if lags is None else np.asarray(lags, dtype=int)
    if lags.size == 0:
        raise DomainError(f"series of length {n} is too short for any lag")
    if np.any(lags < 1) or np.any(np.diff(lags) <= 0):
        raise DomainError("lags must be positive and strictly increasing")
    if lags[-1] >= n / 4:
        raise DomainError(f"max lag {lags[-1]} must be below n/4 = {n / 4}")
    values = np.array([np.mean((x[lag:] - x[:-lag]) ** 2) for lag in lags])
    return StructureFunction(lags, values)


def fit_hurst(sf, fit_range=None):
    """OLS of ``log value`` on ``log lag``; returns ``(slope / 2, r_squared)``."""
    lags, vals = sf.lags, sf.values
    if fit_range is not None:
        lo, hi = fit_range
        keep = (lags >= lo) & (lags <= hi)
        lags, vals = lags[keep], vals[keep]
    if lags.size < 3:
        raise FitError(f"need at least 3 structure-function points, got {lags.size}")
    if np.any(~(vals > 0)) or not np.all(np.isfinite(vals)):
        raise FitError("structure-function values must be positive and finite in the fit range")
    lx, ly = np.log(lags), np.log(vals)
    lxc = lx - lx.mean()
    slope = float(np.dot(lxc, ly - ly.mean()) / np.dot(lxc, lxc))
    resid = ly - ly.mean() - slope * lxc
    ss_tot = float(np.dot(ly - ly.mean(), ly - ly.mean()))
    r2 = 1.0 if ss_tot == 0 else max(0.0, min(1.0, 1.0 - float(np.dot(resid, resid)) / ss_tot))
    return slope / 2.0, r2


def _log_positive(series):
    v = series.values
    bad = np.flatnonzero(~(v > 0))
    if bad.size:
        raise DataError(f"volatility must be positive; first offending index {bad[0]}", rows=bad + 1)
    return np.log(v)


def integrate_logvol(series):
    """Partial sums of ``log sigma`` on the same time grid."""
    series = _as_series(series)
    return SeriesSample(series.times, np.cumsum(_log_positive(series)))


def detrend_linear(series):
    """Fit ``value ~ a + beta * t`` by OLS; return ``(beta, residual series)``."""
    series = _as_series(series)
    t, y = series.times, series.values
    if t.size < 3:
        raise FitError("detrending needs at least 3 points")
    tc = t - t.mean()
    stt = float(np.dot(tc, tc))
    if not stt > 0:
        raise FitError("degenerate time grid")
    beta = float(np.dot(tc, y - y.mean()) / stt)
    resid = (y - y.mean()) - beta * tc
    return beta, SeriesSample(t, resid)


def calibrate_k(series, delta, hurst):
    """Invert ``Var(log sigma) = (k/delta)**2 delta**(2H)`` for ``k``."""
    series = _as_series(series)
    if len(series) < 30:
        raise DataError(f"calibrate_k needs at least 30 samples, got {len(series)}")
    logs = _log_positive(series)
    return float(np.std(logs, ddof=1) * delta ** (1.0 - hurst))


@dataclass(frozen=True)
class ScalingConfig:
    """Fit ranges, in units of the sampling step.

    Linear detrending of a long-memory path depresses its structure function
    increasingly with lag, so the integrated-series fit is restricted to small
    lags by default.  ``None`` means all computed lags.
    """

    raw_fit: tuple | None = (1, 8)
    integrated_fit: tuple | None = (1, 32)
    lags: tuple | None = None
    min_length: int = 256


@dataclass(frozen=True)
class ScalingReport:
    hurst_raw: float
    hurst_R: float
    beta_hat: float
    k_hat: float
    r_squared_raw: float
    r_squared_R: float
    structure_raw: StructureFunction
    structure_R: StructureFunction
    beta_per_time: float = float("nan")
    delta: float = 1.0
    n: int = 0
    extra: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "hurst_raw": self.hurst_raw,
            "hurst_R": self.hurst_R,
            "beta_hat": self.beta_hat,
            "beta_per_time": self.beta_per_time,
            "k_hat": self.k_hat,
            "r_squared_raw": self.r_squared_raw,
            "r_squared_R": self.r_squared_R,
            "delta": self.delta,
            "n": self.n,
            "structure_raw": self.structure_raw.to_dict(),
            "structure_R": self.structure_R.to_dict(),
            "extra": dict(self.extra),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            hurst_raw=d["hurst_raw"], hurst_R=d["hurst_R"], beta_hat=d["beta_hat"],
            k_hat=d["k_hat"], r_squared_raw=d["r_squared_raw"], r_squared_R=d["r_squared_R"],
            structure_raw=StructureFunction.from_dict(d["structure_raw"]),
            structure_R=StructureFunction.from_dict(d["structure_R"]),
            beta_per_time=d.get("beta_per_time", float("nan")), delta=d.get("delta", 1.0),
            n=d.get("n", 0), extra=d.get("extra", {}),
        )


def analyze_volatility(series, delta=None, config=None):
    """Full reconstruction of ``(H, beta, k)`` from a volatility series.

    ``beta_hat`` is the slope of integrated log-volatility per sampling step
    (the level of ``log sigma``); ``beta_per_time`` divides it by ``delta``.
    """
    config = config or ScalingConfig()
    series = _as_series(series)
    n = len(series)
    delta = series.delta if delta is None else float(delta)
    if n < config.min_length:
        warnings.warn(f"series of length {n} is shorter than {config.min_length}; "
                      "scaling fits may be unreliable", stacklevel=2)
    logs = _log_positive(series)
    index = np.arange(n, dtype=float)
    lags = None if config.lags is None else np.asarray(config.lags, dtype=int)

    sf_raw = structure_function(SeriesSample(index, logs), lags)
    hurst_raw, r2_raw = fit_hurst(sf_raw, config.raw_fit)

    integrated = SeriesSample(index, np.cumsum(logs))
    beta_hat, resid = detrend_linear(integrated)
    sf_r = structure_function(resid, lags)
    hurst_r, r2_r = fit_hurst(sf_r, config.integrated_fit)

    k_hat = calibrate_k(series, delta, hurst_r)
    return ScalingReport(
        hurst_raw=hurst_raw, hurst_R=hurst_r, beta_hat=beta_hat, k_hat=k_hat,
        r_squared_raw=r2_raw, r_squared_R=r2_r, structure_raw=sf_raw, structure_R=sf_r,
        beta_per_time=beta_hat / delta, delta=delta, n=n,
    )


def exact_noise_structure(h, lags, scale=1.0):
    """Exact structure function ``2(g(0) - g(lag))`` of fGn with variance ``scale**2``."""
    lags = np.asarray(lags)
    return scale**2 * 2.0 * (1.0 - fgn_autocovariance(h, lags) / fgn_autocovariance(h, 0))

