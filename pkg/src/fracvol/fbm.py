"""Fractional Gaussian noise and fractional Brownian motion.

The default generator is circulant embedding of the fGn autocovariance
(Davies-Harte), which is exact and O(n log n).  A Cholesky factorisation of
the full Toeplitz covariance is kept as an exact small-n oracle and as the
fallback when the embedding has a negative eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from ._rng import generator
from .errors import DomainError, FactorizationError, GenerationError

__all__ = [
    "FgnSequence",
    "FbmPath",
    "fgn_covariance",
    "fgn_autocovariance",
    "circulant_eigenvalues",
    "generate_fgn",
    "generate_fbm",
    "generate_fbm_cholesky",
    "fractional_noise",
]

CHOLESKY_MAX_N = 2048


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def check_hurst(h):
    if not 0.0 < h < 1.0:
        raise DomainError(f"Hurst index must lie in (0, 1), got {h!r}")
    return float(h)


@dataclass(frozen=True)
class FgnSequence:
    """Stationary increments ``B_H(t + step) - B_H(t)``."""

    values: np.ndarray
    step: float
    hurst: float
    seed: int
    method: str = "circulant"

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(self.values))

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class FbmPath:
    times: np.ndarray
    values: np.ndarray
    hurst: float
    seed: int
    method: str = field(default="circulant")

    def __post_init__(self):
        object.__setattr__(self, "times", _frozen(self.times))
        object.__setattr__(self, "values", _frozen(self.values))
        if self.times.shape != self.values.shape:
            raise ValueError("times and values must have equal length")

    def __len__(self):
        return len(self.values)

    @property
    def step(self):
        return float(self.times[1] - self.times[0]) if len(self.times) > 1 else 0.0

    def increments(self):
        return FgnSequence(np.diff(self.values), self.step, self.hurst, self.seed, self.method)


def fgn_autocovariance(h, lags, step=1.0):
    """Vectorised fGn autocovariance at integer ``lags`` (absolute value taken)."""
    h = check_hurst(h)
    if step <= 0:
        raise DomainError(f"step must be positive, got {step!r}")
    k = np.abs(np.asarray(lags, dtype=float))
    two_h = 2.0 * h
    return 0.5 * step**two_h * (
        np.abs(k + 1.0) ** two_h - 2.0 * k**two_h + np.abs(k - 1.0) ** two_h
    )


def fgn_covariance(h, lag, step=1.0):
    """Autocovariance ``E[g_0 g_lag]`` of fGn sampled at spacing ``step``.

    >>> round(fgn_covariance(0.8, 1), 4)
    0.5157
    """
    if lag < 0:
        raise DomainError(f"lag must be non-negative, got {lag!r}")
    return float(fgn_autocovariance(h, lag, step))


def _embedding_size(n):
    # half-size of the circulant: power of two >= n
    return 1 << max(0, int(n - 1).bit_length())


def circulant_eigenvalues(h, n, step=1.0):
    """Eigenvalues of the minimal power-of-two circulant embedding for ``n`` samples."""
    m = _embedding_size(n)
    gamma = fgn_autocovariance(h, np.arange(m + 1), step)
    row = np.concatenate([gamma, gamma[-2:0:-1]])
    return np.fft.fft(row).real


def _cholesky_factor(h, n, step):
    cov = scipy.linalg.toeplitz(fgn_autocovariance(h, np.arange(n), step))
    try:
        return np.linalg.cholesky(cov)
    except np.linalg.LinAlgError:
        _, d, _ = scipy.linalg.ldl(cov)
        pivot = float(np.min(np.linalg.eigvalsh(d)))
        raise FactorizationError(
            f"fGn covariance (H={h}, n={n}) is not positive definite; "
            f"smallest pivot {pivot:.3e}",
            smallest_pivot=pivot,
        ) from None


def _fgn_block(h, n, step, rng, size):
    """``size`` independent fGn rows of length ``n`` drawn from ``rng``.

    Returns ``(values, method)``.
    """
    lam = circulant_eigenvalues(h, n, step)
    if np.any(lam < 0.0):
        if n > CHOLESKY_MAX_N:
            raise GenerationError(
                f"circulant embedding has negative eigenvalue {lam.min():.3e} "
                f"(H={h}, n={n}) and n exceeds the Cholesky fallback limit"
            )
        lower = _cholesky_factor(h, n, step)
        return rng.standard_normal((size, n)) @ lower.T, "cholesky"
    m2 = lam.size
    z = rng.standard_normal((size, m2)) + 1j * rng.standard_normal((size, m2))
    y = np.fft.fft(np.sqrt(lam / m2) * z, axis=-1)
    return y.real[:, :n], "circulant"


def generate_fgn(h, n, step=1.0, seed=0):
    """Exact fractional Gaussian noise of length ``n``.

    Parameters
    ----------
    h : float
        Hurst index in (0, 1).
    n : int
        Number of increments.
    step : float
        Time spacing; each increment has variance ``step**(2h)``.
    seed : int
        Seed for the Philox stream. Identical arguments give identical output.
    """
    h = check_hurst(h)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if step <= 0:
        raise DomainError(f"step must be positive, got {step!r}")
    values, method = _fgn_block(h, n, step, generator(seed), 1)
    return FgnSequence(values[0], float(step), h, int(seed), method)


def _path_from_fgn(fgn):
    n = len(fgn)
    values = np.concatenate([[0.0], np.cumsum(fgn.values)])
    times = fgn.step * np.arange(n + 1)
    return FbmPath(times, values, fgn.hurst, fgn.seed, fgn.method)


def generate_fbm(h, n, step=1.0, seed=0):
    """fBm on ``0, step, ..., n*step``: cumulative sum of :func:`generate_fgn`."""
    return _path_from_fgn(generate_fgn(h, n, step, seed))


def generate_fbm_cholesky(h, n, step=1.0, seed=0):
    """fBm via Cholesky factorisation of the n x n fGn covariance (n <= 2048)."""
    h = check_hurst(h)
    if not 1 <= n <= CHOLESKY_MAX_N:
        raise DomainError(f"Cholesky generator needs 1 <= n <= {CHOLESKY_MAX_N}, got {n}")
    if step <= 0:
        raise DomainError(f"step must be positive, got {step!r}")
    lower = _cholesky_factor(h, n, step)
    z = generator(seed).standard_normal(n)
    return _path_from_fgn(FgnSequence(lower @ z, float(step), h, int(seed), "cholesky"))


def fractional_noise(path, window=1):
    """Windowed differences ``B_H(t) - B_H(t - window*step)`` of an fBm path."""
    values = path.values if isinstance(path, FbmPath) else np.asarray(path, dtype=float)
    if window < 1 or window >= len(values):
        raise DomainError(f"window must satisfy 1 <= window < {len(values)}, got {window}")
    return values[window:] - values[:-window]
