"""Finite-difference solver for the fractional-volatility pricing equation.

In ``x = log(S/K)`` and ``y = log(sigma)`` the equation becomes

    V_t + (r - e^{2y}/2) V_x + e^{2y}/2 V_xx + b V_y + A V_yy = r V

with ``A = H k^2 delta^(2H-3)`` and ``b = (k/delta)(k H delta^(2H-2) - nu) - A``.
There is no mixed derivative, so each time step is a Strang splitting
``Y(dt/2) X(dt) Y(dt/2)`` of one-dimensional theta-scheme line solves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from ..errors import ConfigurationError, DomainError, NumericalError
from .coefficients import log_sigma_drift, sigma_diffusion
from .option import OptionSpec

__all__ = ["GridSpec", "PdeConfig", "PriceSurface", "price_pde", "solve_tridiagonal"]

SCHEMES = {"implicit": 1.0, "crank_nicolson": 0.5}


@dataclass(frozen=True)
class GridSpec:
    min: float
    max: float
    count: int

    def points(self):
        return np.linspace(self.min, self.max, self.count)

    def to_dict(self):
        return {"min": self.min, "max": self.max, "count": self.count}


@dataclass(frozen=True)
class PdeConfig:
    """Discretisation of the pricing equation.

    ``x_grid`` is in log-moneyness, ``sigma_grid`` in volatility (the solver
    spaces it uniformly in ``log sigma``).  ``max_diffusion_number`` bounds
    ``coef * dt / h**2`` for Crank-Nicolson, whose high-frequency modes are
    barely damped beyond it.
    """

    r: float = 0.0
    nu: float = 0.0
    x_grid: GridSpec = GridSpec(-3.0, 3.0, 201)
    sigma_grid: GridSpec = GridSpec(0.05, 1.0, 33)
    time_steps: int = 200
    scheme: str = "crank_nicolson"
    rannacher_steps: int = 2
    max_diffusion_number: float = 100.0

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ConfigurationError(f"scheme must be one of {sorted(SCHEMES)}, got {self.scheme!r}")
        if self.x_grid.count < 16:
            raise ConfigurationError("x grid needs at least 16 points")
        if self.sigma_grid.count < 8:
            raise ConfigurationError("sigma grid needs at least 8 points")
        if not 0 < self.sigma_grid.min < self.sigma_grid.max:
            raise ConfigurationError("sigma grid needs 0 < min < max")
        if not self.x_grid.min < 0 < self.x_grid.max:
            raise ConfigurationError("x grid must bracket the strike (min < 0 < max)")
        if self.time_steps < 1:
            raise ConfigurationError("time_steps must be >= 1")
        if self.nu < 0:
            raise ConfigurationError("nu must be non-negative")

    def to_dict(self):
        return {
            "r": self.r, "nu": self.nu, "x_grid": self.x_grid.to_dict(),
            "sigma_grid": self.sigma_grid.to_dict(), "time_steps": self.time_steps,
            "scheme": self.scheme, "rannacher_steps": self.rannacher_steps,
            "max_diffusion_number": self.max_diffusion_number,
        }

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        try:
            xg = d.pop("x_grid", None) or d.pop("s_grid", None)
            d.pop("s_grid", None)
            sg = d.pop("sigma_grid", None)
            if xg is not None:
                d["x_grid"] = GridSpec(float(xg["min"]), float(xg["max"]), int(xg["count"]))
            if sg is not None:
                d["sigma_grid"] = GridSpec(float(sg["min"]), float(sg["max"]), int(sg["count"]))
            return cls(**d)
        except (KeyError, TypeError) as exc:
            raise ConfigurationError(f"bad PDE config: {exc!r}") from None


@dataclass(frozen=True)
class PriceSurface:
    """Option value at t=0 on the grid: ``values[i, j]`` at ``sigma_values[i]``, ``x_values[j]``."""

    x_values: np.ndarray
    sigma_values: np.ndarray
    values: np.ndarray
    terminal: np.ndarray
    option: OptionSpec
    config: PdeConfig
    provenance: dict = field(default_factory=dict)

    def price(self, s, sigma):
        x = math.log(s / self.option.strike)
        y = math.log(sigma)
        ys = np.log(self.sigma_values)
        if not (self.x_values[0] <= x <= self.x_values[-1] and ys[0] - 1e-12 <= y <= ys[-1] + 1e-12):
            raise DomainError(f"(S={s}, sigma={sigma}) lies outside the PDE grid")
        interp = RegularGridInterpolator((ys, self.x_values), self.values, method="cubic")
        return float(interp([[min(max(y, ys[0]), ys[-1]), x]])[0])

    def rows(self):
        """``(x, sigma, value)`` triples, sigma-major."""
        for i, sig in enumerate(self.sigma_values):
            for j, x in enumerate(self.x_values):
                yield float(x), float(sig), float(self.values[i, j])


def solve_tridiagonal(lower, diag, upper, rhs):
    """Thomas algorithm over the last axis, batched over leading axes.

    ``lower[..., 0]`` and ``upper[..., -1]`` are ignored.
    """
    lower, diag, upper, rhs = np.broadcast_arrays(lower, diag, upper, rhs)
    n = rhs.shape[-1]
    c = np.empty(rhs.shape)
    d = np.empty(rhs.shape)
    c[..., 0] = upper[..., 0] / diag[..., 0]
    d[..., 0] = rhs[..., 0] / diag[..., 0]
    for i in range(1, n):
        m = diag[..., i] - lower[..., i] * c[..., i - 1]
        c[..., i] = upper[..., i] / m
        d[..., i] = (rhs[..., i] - lower[..., i] * d[..., i - 1]) / m
    out = np.empty(rhs.shape)
    out[..., -1] = d[..., -1]
    for i in range(n - 2, -1, -1):
        out[..., i] = d[..., i] - c[..., i] * out[..., i + 1]
    return out


def _stencil(diff, drift, h, decay):
    """Interior coefficients of ``diff V'' + drift V' - decay V``.

    Central differences, switching to upwinding for the drift where the cell
    Peclet number exceeds one.
    """
    diff, drift = np.broadcast_arrays(np.asarray(diff, float), np.asarray(drift, float))
    central = np.abs(drift) * h <= 2.0 * diff
    d2 = diff / h**2
    lo = np.where(central, d2 - drift / (2 * h), d2 + np.maximum(-drift, 0.0) / h)
    up = np.where(central, d2 + drift / (2 * h), d2 + np.maximum(drift, 0.0) / h)
    mid = -(lo + up) - decay
    return lo, mid, up


def _theta_lines(v, lo, mid, up, theta, dt, bc_lo, bc_hi):
    """One theta-scheme step for the operator on every row of ``v``.

    Boundary conditions are ``("dirichlet", value)`` or ``("linear",)``
    (zero second difference at the edge).  Extrapolated edge values are
    floored at zero: every supported payoff is non-negative, and a linear
    extension of a convex profile can otherwise dip below it.
    """
    lo = np.broadcast_to(lo, v[:, 1:-1].shape)
    mid = np.broadcast_to(mid, v[:, 1:-1].shape)
    up = np.broadcast_to(up, v[:, 1:-1].shape)
    rhs = v[:, 1:-1].copy()
    if theta < 1.0:
        rhs += (1.0 - theta) * dt * (lo * v[:, :-2] + mid * v[:, 1:-1] + up * v[:, 2:])
    a = -theta * dt * lo
    b = 1.0 - theta * dt * mid
    c = -theta * dt * up
    if bc_lo[0] == "dirichlet":
        rhs[:, 0] -= a[:, 0] * bc_lo[1]
    else:
        b[:, 0] += 2.0 * a[:, 0]
        c[:, 0] -= a[:, 0]
    if bc_hi[0] == "dirichlet":
        rhs[:, -1] -= c[:, -1] * bc_hi[1]
    else:
        b[:, -1] += 2.0 * c[:, -1]
        a[:, -1] -= c[:, -1]
    out = np.empty_like(v)
    out[:, 1:-1] = solve_tridiagonal(a, b, c, rhs)
    out[:, 0] = bc_lo[1] if bc_lo[0] == "dirichlet" else np.maximum(2 * out[:, 1] - out[:, 2], 0.0)
    out[:, -1] = (bc_hi[1] if bc_hi[0] == "dirichlet"
                  else np.maximum(2 * out[:, -2] - out[:, -3], 0.0))
    return out


def _x_boundaries(option, x, r, tau):
    kk = option.strike
    disc = math.exp(-r * tau)
    if option.payoff_kind == "call_standard":
        return ("dirichlet", 0.0), ("dirichlet", kk * math.exp(x[-1]) - kk * disc)
    if option.payoff_kind == "put_standard":
        return ("dirichlet", kk * disc - kk * math.exp(x[0])), ("dirichlet", 0.0)
    return ("dirichlet", 0.0), ("linear",)


def _schedule(config, dt):
    theta = SCHEMES[config.scheme]
    steps = []
    for n in range(config.time_steps):
        if theta < 1.0 and n < config.rannacher_steps:
            steps += [(1.0, dt / 2), (1.0, dt / 2)]
        else:
            steps.append((theta, dt))
    return steps


def price_pde(params, option, config):
    """March the payoff backward from maturity to t=0 on the (x, log sigma) grid."""
    diff_y = sigma_diffusion(params)
    drift_y = log_sigma_drift(params, config.nu)
    x = config.x_grid.points()
    sig = np.exp(np.linspace(math.log(config.sigma_grid.min), math.log(config.sigma_grid.max),
                             config.sigma_grid.count))
    y = np.log(sig)
    hx, hy = x[1] - x[0], y[1] - y[0]
    r, T = config.r, option.maturity
    dt = T / config.time_steps

    a = 0.5 * sig**2
    if SCHEMES[config.scheme] < 1.0:
        lam = max(a.max() * dt / hx**2, diff_y * dt / hy**2)
        if lam > config.max_diffusion_number:
            need = math.ceil(config.time_steps * lam / config.max_diffusion_number)
            raise ConfigurationError(
                f"Crank-Nicolson diffusion number {lam:.3g} exceeds "
                f"{config.max_diffusion_number:g}; use time_steps >= {need} or the implicit scheme")

    xlo, xmid, xup = _stencil(a[:, None], (r - a)[:, None], hx, r)
    ylo, ymid, yup = _stencil(diff_y, drift_y, hy, 0.0)
    linear = ("linear",)

    terminal = np.broadcast_to(option.payoff_x(x), (sig.size, x.size)).copy()
    v = terminal.copy()
    tau = 0.0
    for theta, h in _schedule(config, dt):
        v = _theta_lines(v.T, ylo, ymid, yup, theta, h / 2, linear, linear).T
        bc_lo, bc_hi = _x_boundaries(option, x, r, tau + h)
        v = _theta_lines(v, xlo, xmid, xup, theta, h, bc_lo, bc_hi)
        v = _theta_lines(v.T, ylo, ymid, yup, theta, h / 2, linear, linear).T
        tau += h
        if not np.all(np.isfinite(v)):
            raise NumericalError(f"non-finite option values at tau={tau:.6g}")
    terminal.setflags(write=False)
    v.setflags(write=False)
    return PriceSurface(
        x, sig, v, terminal, option, config,
        provenance={"sigma_diffusion": diff_y, "log_sigma_drift": drift_y,
                    "dt": dt, "scheme": config.scheme},
    )
