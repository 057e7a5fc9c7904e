"""Fractional Gaussian noise and its cumulative sum.

Draws fBm paths at a few Hurst exponents, checks the sample autocovariance of
the noise against the exact one, and shows how long-range dependence makes
the partial sums persistent.
"""
import numpy as np

from fracvol import fgn_autocovariance, generate_fbm, generate_fgn

# Exact autocovariance of unit-step noise.  For h > 1/2 the lags decay slowly
# and stay positive.
for h in (0.3, 0.5, 0.8):
    print(f"h={h}: gamma(0..4) =", np.round(fgn_autocovariance(h, np.arange(5)), 4))

# Sample autocovariance over many seeds vs the exact values
h, n = 0.8, 2048
draws = np.stack([generate_fgn(h, n, 1.0, seed).values for seed in range(200)])
sample = [np.mean(draws[:, : n - m] * draws[:, m:]) for m in range(5)]
print("\nsample  :", np.round(sample, 4))
print("exact   :", np.round(fgn_autocovariance(h, np.arange(5)), 4))

# Variance of B_H(t) grows like t**(2h)
paths = np.stack([generate_fbm(h, 1024, 1.0, seed).values for seed in range(400)])
for t in (16, 64, 256, 1024):
    print(f"Var B({t:4d}) = {paths[:, t].var():9.2f}   t^(2h) = {t ** (2 * h):9.2f}")

# Same seed, same path, on any machine
a = generate_fbm(0.7, 100, 0.01, seed=3)
b = generate_fbm(0.7, 100, 0.01, seed=3)
print("\nreproducible:", np.array_equal(a.values, b.values), "| method:", a.method)
