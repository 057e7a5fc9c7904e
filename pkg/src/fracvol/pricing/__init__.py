"""Option pricing under the fractional volatility model."""

from .bessel import besselj, neumann
from .blackscholes import implied_vol, price_black_scholes, price_black_scholes_put
from .coefficients import log_sigma_drift, malliavin_coefficient, sigma_diffusion, sigma_drift
from .modes import ModeConstants, bessel_mode, mode_constants, verify_mode_ode
from .montecarlo import MonteCarloResult, price_monte_carlo
from .option import OptionSpec
from .pde import GridSpec, PdeConfig, PriceSurface, price_pde
from .smile import price_smile

__all__ = [
    "GridSpec", "ModeConstants", "MonteCarloResult", "OptionSpec", "PdeConfig", "PriceSurface",
    "bessel_mode", "besselj", "implied_vol", "log_sigma_drift", "malliavin_coefficient",
    "mode_constants", "neumann", "price_black_scholes", "price_black_scholes_put", "price_monte_carlo",
    "price_pde", "price_smile", "sigma_diffusion", "sigma_drift", "verify_mode_ode",
]
