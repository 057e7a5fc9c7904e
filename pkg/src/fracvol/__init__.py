"""Fractional volatility model toolkit.

Simulation of volatility driven by fractional noise, scaling analysis of
volatility series, and option pricing through the model's pricing equation,
Monte Carlo and its Bessel-function mode solutions.
"""

from .errors import (
    BesselEvaluationError, ConfigurationError, DataError, DomainError, FactorizationError,
    FitError, FracVolError, GenerationError, NumericalError, UnsupportedOrderError,
)
from .fbm import (
    FbmPath, FgnSequence, fgn_autocovariance, fgn_covariance, fractional_noise, generate_fbm,
    generate_fbm_cholesky, generate_fgn,
)
from .model import (
    FvmParams, PricePath, VolatilityPath, risk_neutral_paths, simulate_fvm,
    simulate_mean_reverting, simulate_volatility,
)
from .scaling import (
    ScalingConfig, ScalingReport, SeriesSample, StructureFunction, analyze_volatility,
    calibrate_k, detrend_linear, dyadic_lags, exact_noise_structure, fit_hurst,
    integrate_logvol, structure_function,
)

__version__ = "0.1.0"
