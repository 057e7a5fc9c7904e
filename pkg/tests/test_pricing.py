import math

import mpmath as mp
import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings, strategies as st

import fracvol.pricing.pde as pde_mod
from fracvol import (BesselEvaluationError, ConfigurationError, DomainError, FvmParams,
                     NumericalError, UnsupportedOrderError, risk_neutral_paths)
from fracvol.pricing.pde import solve_tridiagonal
from fracvol.pricing import (GridSpec, ModeConstants, OptionSpec, PdeConfig, bessel_mode, besselj,
                             implied_vol, log_sigma_drift, malliavin_coefficient, mode_constants,
                             neumann, price_black_scholes, price_black_scholes_put,
                             price_monte_carlo, price_pde, price_smile, sigma_diffusion,
                             sigma_drift, verify_mode_ode)

MODERATE = FvmParams(theta=0.2, k=0.1, delta=0.5, hurst=0.75)
REF = FvmParams(theta=0.2, k=1.0, delta=1.0, hurst=0.8)


def small_config(**kw):
    base = dict(r=0.01, x_grid=GridSpec(-3, 3, 121), sigma_grid=GridSpec(0.05, 0.8, 17),
                time_steps=40)
    return PdeConfig(**(base | kw))


# --- Black-Scholes -------------------------------------------------------------

class TestBlackScholes:
    def test_reference_value(self):
        assert price_black_scholes(100, 100, 0.05, 0.2, 1.0) == pytest.approx(10.4506, abs=5e-5)

    def test_against_quadrature(self):
        s, k, r, sig, t = 90.0, 100.0, 0.03, 0.35, 0.7
        m = mp.log(s) + (r - sig**2 / 2) * t
        sd = sig * mp.sqrt(t)
        ref = mp.exp(-r * t) * mp.quad(lambda z: max(mp.exp(m + sd * z) - k, 0) * mp.npdf(z),
                                      [(mp.log(k) - m) / sd, mp.inf])
        assert price_black_scholes(s, k, r, sig, t) == pytest.approx(float(ref), rel=1e-12)

    def test_zero_vol_zero_rate_atm(self):
        assert price_black_scholes(100, 100, 0.0, 0.0, 1.0) == 0.0
        assert price_black_scholes(100, 100, 0.0, 1e-9, 1e-6) < 1e-9

    def test_deep_in_the_money(self):
        assert price_black_scholes(1e6, 100, 0.05, 0.2, 1.0) == pytest.approx(
            1e6 - 100 * math.exp(-0.05), rel=1e-12)

    def test_put_call_parity(self):
        c = price_black_scholes(95, 100, 0.02, 0.3, 2.0)
        p = price_black_scholes_put(95, 100, 0.02, 0.3, 2.0)
        assert c - p == pytest.approx(95 - 100 * math.exp(-0.04))

    @given(st.floats(0.02, 3.0), st.floats(50, 200), st.floats(0.05, 3.0))
    @settings(max_examples=50)
    def test_implied_vol_round_trip(self, sig, k, t):
        price = price_black_scholes(100.0, k, 0.01, sig, t)
        iv = implied_vol(price, 100.0, k, 0.01, t)
        d1 = (math.log(100.0 / k) + (0.01 + sig**2 / 2) * t) / (sig * math.sqrt(t))
        vega = 100.0 * math.sqrt(t) * math.exp(-d1**2 / 2) / math.sqrt(2 * math.pi)
        assert abs(price_black_scholes(100.0, k, 0.01, iv, t) - price) <= 2e-8 * vega + 1e-10
        if vega > 1e-2:
            assert iv == pytest.approx(sig, abs=2e-8)

    def test_implied_vol_out_of_range(self):
        with pytest.raises(NumericalError):
            implied_vol(200.0, 100, 100, 0.0, 1.0)


# --- coefficients ----------------------------------------------------------------

class TestCoefficients:
    def test_limits(self):
        assert malliavin_coefficient(FvmParams(hurst=0.5 + 1e-12)) == pytest.approx(0.5)
        assert malliavin_coefficient(FvmParams(hurst=0.8)) == pytest.approx(0.8)
        assert malliavin_coefficient(FvmParams(hurst=0.8, delta=0.5)) == pytest.approx(0.5278, abs=1e-4)

    def test_against_kernel_integral(self):
        with mp.workdps(30):
            ref = mp.quad(lambda v: mp.mpf("0.8") * mp.mpf("0.6") * (1 - v) ** mp.mpf("-0.4"),
                          [0.5, 1])
        assert malliavin_coefficient(FvmParams(hurst=0.8, delta=0.5)) == pytest.approx(float(ref), rel=1e-12)

    @pytest.mark.parametrize("h", [0.3, 0.5])
    def test_kernel_domain(self, h):
        with pytest.raises(DomainError):
            malliavin_coefficient(FvmParams(hurst=h))

    @given(st.floats(0.51, 0.99), st.floats(1e-3, 2), st.floats(0.01, 2), st.floats(0, 1))
    def test_pde_coefficients(self, h, d, k, nu):
        p = FvmParams(k=k, delta=d, hurst=h)
        assert sigma_diffusion(p) == pytest.approx(h * k**2 * d ** (2 * h - 3), rel=1e-12)
        assert sigma_drift(p, nu) == pytest.approx((k / d) * (k * h * d ** (2 * h - 2) - nu), rel=1e-12)
        assert log_sigma_drift(p, nu) == pytest.approx(-nu * k / d, rel=1e-9,
                                                       abs=1e-12 * sigma_diffusion(p))


def test_change_of_variables():
    """The (x, y) operator equals the (S, sigma) operator on a smooth test function."""
    p = MODERATE
    r, nu, kk = 0.03, 0.2, 100.0
    a, b = sigma_diffusion(p), sigma_drift(p, nu)
    by = log_sigma_drift(p, nu)

    def g(x, y):
        return mp.exp(0.3 * x - y**2) * mp.sin(x * y + 1)

    def f(s, sig):
        return g(mp.log(s / kk), mp.log(sig))

    with mp.workdps(30):
        s0, sig0 = mp.mpf(110), mp.mpf("0.3")
        lhs = (r * s0 * mp.diff(f, (s0, sig0), (1, 0))
               + sig0**2 * s0**2 / 2 * mp.diff(f, (s0, sig0), (2, 0))
               + b * sig0 * mp.diff(f, (s0, sig0), (0, 1))
               + a * sig0**2 * mp.diff(f, (s0, sig0), (0, 2)))
        x0, y0 = mp.log(s0 / kk), mp.log(sig0)
        e2y = mp.exp(2 * y0)
        rhs = ((r - e2y / 2) * mp.diff(g, (x0, y0), (1, 0))
               + e2y / 2 * mp.diff(g, (x0, y0), (2, 0))
               + by * mp.diff(g, (x0, y0), (0, 1))
               + a * mp.diff(g, (x0, y0), (0, 2)))
    assert float(lhs) == pytest.approx(float(rhs), rel=1e-12)


# --- option spec --------------------------------------------------------------

class TestOptionSpec:
    def test_payoffs(self):
        s = np.array([50.0, 100.0, 150.0])
        assert OptionSpec(100, 1).payoff(s).tolist() == [0, 0, 50]
        assert OptionSpec(100, 1, "put_standard").payoff(s).tolist() == [50, 0, 0]
        assert OptionSpec(100, 1, "call_logmoneyness").payoff(s)[2] == pytest.approx(math.log(1.5))

    def test_round_trip(self):
        o = OptionSpec(90.0, 0.25, "put_standard")
        assert OptionSpec.from_dict(o.to_dict()) == o

    @pytest.mark.parametrize("d", [{"strike": 100}, {"strike": -1, "maturity": 1},
                                   {"strike": 100, "maturity": 1, "payoff_kind": "digital"}])
    def test_bad(self, d):
        with pytest.raises(ConfigurationError):
            OptionSpec.from_dict(d)


# --- PDE ------------------------------------------------------------------------

def test_tridiagonal_against_banded():
    rng = np.random.default_rng(0)
    m, n = 5, 30
    a, c = rng.normal(size=(m, n)), rng.normal(size=(m, n))
    b = 4 + np.abs(a) + np.abs(c)
    d = rng.normal(size=(m, n))
    x = solve_tridiagonal(a, b, c, d)
    for i in range(m):
        ab = np.zeros((3, n))
        ab[0, 1:], ab[1], ab[2, :-1] = c[i, :-1], b[i], a[i, 1:]
        assert np.allclose(x[i], scipy.linalg.solve_banded((1, 1), ab, d[i]), rtol=1e-12)


class TestPde:
    @pytest.mark.parametrize("scheme", ["crank_nicolson", "implicit"])
    def test_black_scholes_reduction(self, scheme):
        p = FvmParams(theta=0.2, k=1e-8, delta=1.0, hurst=0.8)
        cfg = PdeConfig(r=0.05, x_grid=GridSpec(-3, 3, 200), sigma_grid=GridSpec(0.19, 0.21, 8),
                        time_steps=100, scheme=scheme)
        surf = price_pde(p, OptionSpec(100, 1.0), cfg)
        assert surf.price(100, 0.2) == pytest.approx(10.4506, rel=5e-3)
        assert surf.price(100, 0.2) == pytest.approx(price_black_scholes(100, 100, 0.05, 0.2, 1.0),
                                                     rel=5e-3)

    def test_logmoneyness_payoff_reduction(self):
        p = FvmParams(theta=0.2, k=1e-8, delta=1.0, hurst=0.8)
        cfg = PdeConfig(r=0.05, x_grid=GridSpec(-3, 3, 301), sigma_grid=GridSpec(0.19, 0.21, 8),
                        time_steps=100)
        v = price_pde(p, OptionSpec(100, 1.0, "call_logmoneyness"), cfg).price(100, 0.2)
        m, s = 0.05 - 0.02, 0.2
        ref = math.exp(-0.05) * (m * 0.5 * math.erfc(-m / s / math.sqrt(2))
                                 + s * math.exp(-0.5 * (m / s) ** 2) / math.sqrt(2 * math.pi))
        assert v == pytest.approx(ref, rel=1e-2)

    def test_terminal_consistency(self):
        o = OptionSpec(100, 1e-10)
        surf = price_pde(MODERATE, o, small_config(time_steps=1))
        payoff = o.payoff_x(surf.x_values)
        assert np.array_equal(surf.terminal[0], payoff)
        assert np.allclose(surf.values, payoff[None, :], atol=1e-6)

    @pytest.mark.parametrize("h,k,delta", [(0.6, 0.2, 0.5), (0.85, 0.3, 1 / 252), (0.75, 0.1, 0.5)])
    def test_non_negative_and_monotone(self, h, k, delta):
        p = FvmParams(theta=0.2, k=k, delta=delta, hurst=h)
        surf = price_pde(p, OptionSpec(100, 0.5), small_config(scheme="implicit", time_steps=100))
        assert surf.values.min() >= 0
        assert np.all(np.diff(surf.values, axis=1) >= -1e-9)
        put = price_pde(p, OptionSpec(100, 0.5, "put_standard"), small_config(scheme="implicit"))
        assert put.values.min() >= 0

    def test_put_call_parity(self):
        cfg = small_config(x_grid=GridSpec(-3, 3, 241), time_steps=80)
        c = price_pde(MODERATE, OptionSpec(100, 0.5), cfg).price(100, 0.2)
        p = price_pde(MODERATE, OptionSpec(100, 0.5, "put_standard"), cfg).price(100, 0.2)
        assert c - p == pytest.approx(100 - 100 * math.exp(-0.005), abs=2e-3)

    def test_grid_convergence(self):
        o, prices = OptionSpec(100, 0.5), []
        for nx, ns, nt in [(61, 9, 20), (121, 17, 40), (241, 33, 80)]:
            cfg = PdeConfig(r=0.01, x_grid=GridSpec(-3, 3, nx), sigma_grid=GridSpec(0.05, 0.8, ns),
                            time_steps=nt)
            prices.append(price_pde(MODERATE, o, cfg).price(100, 0.2))
        d1, d2 = abs(prices[1] - prices[0]), abs(prices[2] - prices[1])
        assert d1 >= 3 * d2

    def test_feynman_kac_of_the_equation(self):
        """Monte Carlo of the diffusion whose generator the solver discretises."""
        nu = 1.0
        surf = price_pde(MODERATE, OptionSpec(100, 0.5),
                         PdeConfig(r=0.01, nu=nu, x_grid=GridSpec(-3, 3, 481),
                                   sigma_grid=GridSpec(0.05, 0.8, 65), time_steps=160))
        a, b = sigma_diffusion(MODERATE), log_sigma_drift(MODERATE, nu)
        rng = np.random.default_rng(1)
        n, steps, t = 200_000, 200, 0.5
        dt = t / steps
        y = np.full(n, math.log(0.2))
        iv = np.zeros(n)
        for _ in range(steps):
            y_next = y + b * dt + math.sqrt(2 * a * dt) * rng.standard_normal(n)
            iv += 0.5 * (np.exp(2 * y) + np.exp(2 * y_next)) * dt
            y = y_next
        z = rng.standard_normal(n)
        base = math.log(100) + 0.01 * t - 0.5 * iv
        pay = 0.5 * (np.maximum(np.exp(base + np.sqrt(iv) * z) - 100, 0)
                     + np.maximum(np.exp(base - np.sqrt(iv) * z) - 100, 0)) * math.exp(-0.01 * t)
        ci = 1.96 * pay.std(ddof=1) / math.sqrt(n)
        assert abs(surf.price(100, 0.2) - pay.mean()) < ci + 0.005

    def test_diffusion_number_guard(self):
        p = FvmParams(theta=0.2, k=0.3, delta=1 / 252, hurst=0.6)
        with pytest.raises(ConfigurationError, match="time_steps >="):
            price_pde(p, OptionSpec(100, 0.5), PdeConfig(time_steps=10))

    def test_non_finite_values(self, monkeypatch):
        monkeypatch.setattr(pde_mod, "solve_tridiagonal", lambda a, b, c, d: np.full_like(d, np.nan))
        with pytest.raises(NumericalError):
            price_pde(MODERATE, OptionSpec(100, 0.5), small_config())

    def test_outside_grid(self):
        surf = price_pde(MODERATE, OptionSpec(100, 0.5), small_config())
        with pytest.raises(DomainError):
            surf.price(100, 2.0)

    def test_kernel_domain(self):
        with pytest.raises(DomainError):
            price_pde(FvmParams(k=0.1, hurst=0.4), OptionSpec(100, 0.5), small_config())

    @pytest.mark.parametrize("kw", [dict(scheme="explicit"), dict(x_grid=GridSpec(-1, 1, 8)),
                                    dict(sigma_grid=GridSpec(0.0, 1, 16)), dict(nu=-1.0),
                                    dict(x_grid=GridSpec(0.1, 1, 32)), dict(time_steps=0)])
    def test_config_validation(self, kw):
        with pytest.raises(ConfigurationError):
            PdeConfig(**kw)

    def test_config_dict(self):
        cfg = small_config(nu=0.1)
        assert PdeConfig.from_dict(cfg.to_dict()) == cfg
        alias = cfg.to_dict()
        alias["s_grid"] = alias.pop("x_grid")
        assert PdeConfig.from_dict(alias) == cfg

    def test_rows_export(self):
        surf = price_pde(MODERATE, OptionSpec(100, 0.5), small_config())
        rows = list(surf.rows())
        assert len(rows) == surf.values.size and len(rows[0]) == 3


def test_smile_homogeneity():
    cfg = small_config(x_grid=GridSpec(-3, 3, 241))
    rows = price_smile(MODERATE, [90.0, 110.0], 0.5, cfg, spot=100.0)
    for k, price, iv in rows:
        direct = price_pde(MODERATE, OptionSpec(k, 0.5), cfg).price(100.0, 0.2)
        assert price == pytest.approx(direct, rel=1e-6)
        assert price_black_scholes(100, k, 0.01, iv, 0.5) == pytest.approx(price, abs=1e-6)


# --- Monte Carlo ----------------------------------------------------------------

class TestMonteCarlo:
    def test_k_zero_black_scholes(self):
        p = FvmParams(theta=0.2, k=0.0, delta=1 / 12, hurst=0.7)
        res = price_monte_carlo(p, OptionSpec(100, 1.0), 100.0, 0.05, 100_000, seed=3)
        assert abs(res.price - price_black_scholes(100, 100, 0.05, 0.2, 1.0)) < res.ci_halfwidth
        lo, hi = res.ci
        assert hi - lo == pytest.approx(2 * res.ci_halfwidth)

    def test_constant_payoff(self):
        p = FvmParams(theta=0.2, k=0.0, delta=0.25, hurst=0.7)
        res = price_monte_carlo(p, OptionSpec(100, 1.0), 100.0, 0.05, 5000,
                                payoff=lambda s: np.ones_like(s))
        assert res.price == pytest.approx(math.exp(-0.05), rel=1e-14)
        assert res.ci_halfwidth < 1e-12

    def test_thread_independence(self):
        p = FvmParams(theta=0.2, k=0.3, delta=1 / 252, hurst=0.85)
        args = (p, OptionSpec(100, 0.25), 100.0, 0.01, 20_000)
        a = price_monte_carlo(*args, seed=5, threads=1)
        b = price_monte_carlo(*args, seed=5, threads=4)
        assert a == b

    def test_antithetic_off(self):
        p = FvmParams(theta=0.2, k=0.3, delta=0.25, hurst=0.75)
        res = price_monte_carlo(p, OptionSpec(100, 1.0), 100.0, 0.01, 20_000, antithetic=False)
        assert not res.antithetic and res.price > 0

    @pytest.mark.parametrize("nu", [0.0, 0.5])
    def test_agrees_with_full_paths(self, nu):
        p = FvmParams(theta=0.2, k=0.3, delta=0.25, hurst=0.75)
        o = OptionSpec(100, 1.0)
        res = price_monte_carlo(p, o, 100.0, 0.02, 40_000, seed=9, nu=nu)
        paths = risk_neutral_paths(p, 100.0, 0.02, 1.0, 4000, 0.25, seed=10, nu=nu)
        pay = o.payoff(np.array([q.prices[-1] for q in paths])) * math.exp(-0.02)
        se = math.hypot(pay.std(ddof=1) / math.sqrt(pay.size), res.std_error)
        assert abs(pay.mean() - res.price) < 3.5 * se

    def test_sub_window_steps(self):
        p = FvmParams(theta=0.2, k=0.0, delta=0.5, hurst=0.75)
        res = price_monte_carlo(p, OptionSpec(100, 1.0), 100.0, 0.0, 50_000, dt=0.1)
        assert abs(res.price - price_black_scholes(100, 100, 0.0, 0.2, 1.0)) < res.ci_halfwidth

    def test_bad_dt(self):
        with pytest.raises(ConfigurationError):
            price_monte_carlo(MODERATE, OptionSpec(100, 1.0), 100.0, 0.0, 10, dt=0.3)


# --- Bessel --------------------------------------------------------------------

class TestBessel:
    @settings(max_examples=80, deadline=None)
    @given(st.floats(-6, 6), st.floats(-5, 5), st.floats(0.05, 15), st.floats(-math.pi, math.pi))
    def test_against_mpmath(self, nr, ni, rad, ang):
        nu, z = complex(nr, ni), rad * complex(math.cos(ang), math.sin(ang))
        ref = complex(mp.besselj(nu, z))
        scale = max(abs(ref), 1e-300)
        got = besselj(nu, z)
        # The ascending series loses ~log10(e^|z|) digits to cancellation.
        tol = 1e-13 * math.exp(abs(z.imag) + abs(z)) * max(1.0, abs(complex(mp.besselj(nu, abs(z)))) / scale)
        assert abs(got - ref) <= max(1e-9, tol) * scale

    @pytest.mark.parametrize("nu,z", [(0.3 + 0.2j, 2.5), (1.5, 4 + 1j), (-2.5 + 1j, 0.7 - 0.3j)])
    def test_neumann_against_mpmath(self, nu, z):
        assert neumann(nu, z) == pytest.approx(complex(mp.bessely(nu, z)), rel=1e-10)

    def test_half_order_closed_form(self):
        assert besselj(0.5, math.pi / 2) == pytest.approx(2 / math.pi, rel=1e-14)
        for z in np.linspace(0.1, 10, 25):
            assert besselj(0.5, z) == pytest.approx(math.sqrt(2 / (math.pi * z)) * math.sin(z),
                                                    rel=1e-10, abs=1e-14)

    def test_negative_integer_order(self):
        assert besselj(-3, 2.0) == pytest.approx(-complex(mp.besselj(3, 2.0)), rel=1e-13)

    def test_origin(self):
        assert besselj(0, 0) == 1 and besselj(1.5, 0) == 0
        with pytest.raises(BesselEvaluationError):
            besselj(-0.5, 0)

    def test_integer_order_unsupported(self):
        with pytest.raises(UnsupportedOrderError):
            neumann(2, 1.0)

    def test_envelope(self):
        with pytest.raises(BesselEvaluationError):
            besselj(0.5, 25.0)
        with pytest.raises(BesselEvaluationError):
            besselj(0.5 + 11j, 1.0)


# --- modes ---------------------------------------------------------------------

def _corrected_constants_mp(rho, phi, p, r, nu):
    h, k, d = (mp.mpf(x) for x in (p.hurst, p.k, p.delta))
    a = h * k**2 * d ** (2 * h - 3)
    chi = nu / (2 * h * k * d ** (2 * h - 2))
    return a, chi, chi**2 + (r - 1j * (phi + rho * r)) / a, -(1j * rho + rho**2) / (2 * a)


class TestModes:
    def test_chi_zero_without_nu(self):
        assert mode_constants(1.0, 2.0, REF, 0.05, 0.0).chi == 0.0

    def test_trivial_mode(self):
        mc = mode_constants(0.0, 0.0, REF, 0.05, 0.0, literal=True)
        a = sigma_diffusion(REF)
        assert mc.xi_sq == pytest.approx(-0.05 / a) and mc.zeta_sq == 0
        assert mode_constants(0.0, 0.0, REF, 0.05, 0.0).xi_sq == pytest.approx(0.05 / a)

    def test_symbolic_values(self):
        mc = mode_constants(1.0, 1.0, REF, 0.05, 0.1)
        lit = mode_constants(1.0, 1.0, REF, 0.05, 0.1, literal=True)
        a, chi, xi_sq, zeta_sq = _corrected_constants_mp(1.0, 1.0, REF, 0.05, 0.1)
        assert mc.chi == pytest.approx(float(chi), rel=1e-15)
        assert mc.xi_sq == pytest.approx(complex(xi_sq), rel=1e-14)
        assert mc.zeta_sq == pytest.approx(complex(zeta_sq), rel=1e-14)
        assert lit.xi_sq == pytest.approx(complex(chi**2 - (0.05 - 1.05j) / a), rel=1e-14)

    def test_sign_choice_solves_the_equation(self):
        """High-precision check with analytic derivatives: only one sign gives a solution."""
        rho, phi, r, nu = 1.0, 2.0, 0.05, 0.1
        p = REF
        with mp.workdps(40):
            a, chi, xi_sq, zeta_sq = _corrected_constants_mp(rho, phi, p, r, nu)
            b = (p.k / p.delta) * (p.k * p.hurst * p.delta ** (2 * p.hurst - 2) - nu)

            def residual(xsq):
                xi, zeta = mp.sqrt(xsq), mp.sqrt(zeta_sq)
                f = lambda s: s**chi * mp.besselj(xi, zeta * s)  # noqa: E731
                s = mp.mpf("0.6")
                c = 1j * (phi + rho * r - s**2 * rho / 2) - s**2 * rho**2 / 2 - r
                terms = [a * s**2 * mp.diff(f, s, 2), b * s * mp.diff(f, s), c * f(s)]
                return abs(sum(terms)) / max(abs(t) for t in terms)

            good = residual(xi_sq)
            bad = residual(chi**2 - (r - 1j * (phi + rho * r)) / a)
        assert good < 1e-12 < 1e-2 < bad

    def test_zero_mode(self):
        mc = mode_constants(1.0, 2.0, REF, 0.05, 0.0)
        assert bessel_mode(0.5, mc, 0, 0) == 0
        assert verify_mode_ode(mc, REF, 0.05, 0.0, 1.0, 2.0, [0.3, 0.6], 0, 0) == 0

    def test_generic_mode(self):
        mc = mode_constants(1.0, 2.0, REF, 0.05, 0.0)
        grid = np.linspace(0.2, 1.0, 17)
        assert verify_mode_ode(mc, REF, 0.05, 0.0, 1.0, 2.0, grid) < 1e-4

    def test_euler_case(self):
        mc = mode_constants(0.0, 0.7, REF, 0.05, 0.1)
        assert mc.zeta == 0
        grid = np.linspace(0.2, 1.0, 9)
        assert verify_mode_ode(mc, REF, 0.05, 0.1, 0.0, 0.7, grid) < 1e-8

    def test_literal_sign_fails_verification(self):
        mc = mode_constants(1.0, 2.0, REF, 0.05, 0.0, literal=True)
        assert verify_mode_ode(mc, REF, 0.05, 0.0, 1.0, 2.0, np.linspace(0.2, 1.0, 9)) > 1e-2

    @settings(max_examples=25, deadline=None)
    @given(st.floats(-2, 2), st.floats(-4, 4), st.floats(0, 0.5), st.floats(0.55, 0.95))
    def test_random_modes(self, rho, phi, nu, h):
        p = FvmParams(theta=0.2, k=1.0, delta=1.0, hurst=h)
        mc = mode_constants(rho, phi, p, 0.05, nu)
        if abs(mc.xi.imag) < 1e-6 and abs(mc.xi.real - round(mc.xi.real)) < 1e-6:
            return
        res = verify_mode_ode(mc, p, 0.05, nu, rho, phi, np.linspace(0.2, 1.0, 9))
        assert res < 1e-4

    def test_k_zero(self):
        with pytest.raises(DomainError):
            mode_constants(1.0, 1.0, FvmParams(k=0.0, hurst=0.8), 0.05, 0.0)

    def test_half_order_mode(self):
        mc = ModeConstants(0.0, 0.25 + 0j, 1.0 + 0j)
        assert bessel_mode(math.pi / 2, mc) == pytest.approx(2 / math.pi, rel=1e-14)
