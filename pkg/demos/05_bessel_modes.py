"""Separable solutions of the pricing equation.

Each Fourier mode in (log S, t) solves an ordinary equation in sigma whose
solutions are Bessel functions of complex order.  The residual of that
equation, evaluated by finite differences, confirms the constants.
"""
import numpy as np

from fracvol import FvmParams
from fracvol.pricing import besselj, mode_constants, verify_mode_ode

p = FvmParams(theta=0.2, k=1.0, delta=1.0, hurst=0.8)
r, nu = 0.05, 0.1
sigmas = np.linspace(0.5, 2.0, 9)

print(f"J_(1+1j)(2.5) = {complex(besselj(1 + 1j, 2.5)):.10f}")

print("\n  rho    phi    residual(corrected)  residual(literal)")
for rho, phi in [(0.3, 0.5), (-1.2, 2.0), (1.5, -3.0), (0.0, 1.0)]:
    good = mode_constants(rho, phi, p, r, nu)
    bad = mode_constants(rho, phi, p, r, nu, literal=True)
    print(f"{rho:5.1f} {phi:6.1f}    {verify_mode_ode(good, p, r, nu, rho, phi, sigmas):.2e}"
          f"           {verify_mode_ode(bad, p, r, nu, rho, phi, sigmas):.2e}")
