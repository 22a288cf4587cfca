"""Harmonic oscillator ratio functions and their series.

The statistical-sum ratio f = prod tau/sinh(tau) decreases from 1, the
mean-energy ratio g = mean tau/tanh(tau) increases from 1, and both are
captured by even-power series with exact Bernoulli coefficients.
"""

import math

from qcthermo import (
    bernoulli_series,
    f_ratio,
    g_ratio,
    monotonicity_certificates,
    series_eval,
)

print(f"{'tau':>6} {'f':>12} {'g':>12} {'df/dtau':>12} {'dg/dtau':>12}")
for tau in (0.1, 0.5, 1.0, 2.0, 4.0):
    cert = monotonicity_certificates(tau)
    print(
        f"{tau:6.2f} {f_ratio([tau]):12.6f} {g_ratio([tau]):12.6f} "
        f"{cert.z_ratio_slope:12.6f} {cert.e_ratio_slope:12.6f}"
    )

print("\nf falls, g climbs; the derivative signs certify strict monotonicity.\n")

f6 = bernoulli_series("f_sinh", 6)
g6 = bernoulli_series("g_tanh", 6)
print("series coefficients (powers of tau^2):")
print("f:", [f"{c:.3e}" for c in f6.coefficients[:4]])
print("g:", [f"{c:.3e}" for c in g6.coefficients[:4]])

tau = 0.8
print(f"\nat tau={tau}:")
print(f"closed form f = {tau / math.sinh(tau):.12f}")
print(f"series     f = {series_eval(f6, tau):.12f}")
print(f"closed form g = {tau / math.tanh(tau):.12f}")
print(f"series     g = {series_eval(g6, tau):.12f}")
