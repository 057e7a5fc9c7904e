"""Simulating volatility and prices.

log sigma is a constant plus scaled fractional noise, so sigma is lognormal
with mean theta.  Prices follow a geometric walk whose volatility is held
fixed inside each window of length delta.
"""
import numpy as np
from scipy import stats

from fracvol import FvmParams, simulate_fvm, simulate_mean_reverting, simulate_volatility

p = FvmParams(mu=0.05, theta=0.2, k=0.3, delta=1 / 252, hurst=0.85)
print(p)
print(f"beta = {p.beta:.4f}, Var log sigma = {p.log_vol_variance:.4f}")

vol = simulate_volatility(p, 252 * 20, seed=11)
# Long memory makes the sample mean converge slowly, so one path can sit well off theta
print(f"\nmean sigma over 20 years: {vol.sigmas.mean():.4f}  (theta = {p.theta})")
print(f"sd of log sigma:          {np.log(vol.sigmas).std():.4f}  "
      f"(model {np.sqrt(p.log_vol_variance):.4f})")

# Daily prices with ten sub-steps per day
path = simulate_fvm(p, 100.0, 252 * 10, dt=p.delta / 10, seed_vol=1, seed_price=2)
rets = np.diff(np.log(path.prices[::10]))
print(f"\nten-year terminal price: {path.prices[-1]:.2f}")
print(f"daily return kurtosis:   {stats.kurtosis(rets, fisher=False):.2f}  (3 for Gaussian)")

# Mean-reverting variant: log sigma relaxes back toward beta at rate alpha.
# With k = 0 the noise is off and the decay is exactly geometric.
mr = FvmParams(theta=0.2, k=0.0, delta=1.0, hurst=0.85, alpha=0.2)
shock = simulate_mean_reverting(mr, 30, seed=0, log_sigma0=mr.beta + 1.0)
print("\nafter a +1 shock to log sigma:",
      np.round(np.log(shock.sigmas[[0, 5, 10, 20, 29]]) - mr.beta, 3))
