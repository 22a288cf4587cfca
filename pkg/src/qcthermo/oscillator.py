"""Thermodynamics of the N-dimensional harmonic oscillator.

Closed forms for the classical and regularized quartets, the even-power
series of the ratio functions built from exact Bernoulli numbers, and the
closed-form derivative certificates behind the monotonicity statements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .core import (
    OscillatorSpec,
    PhysicalParams,
    ThermoQuartet,
    ValidationError,
    reduce_oscillator,
)

__all__ = [
    "osc_classical",
    "osc_regularized",
    "f_ratio",
    "g_ratio",
    "bernoulli_even",
    "BernoulliSeries",
    "bernoulli_series",
    "series_eval",
    "MonotonicityCertificate",
    "monotonicity_certificates",
    "LOG_SPACE_TAU",
]

# Above this sinh overflows; ratios are evaluated through logarithms.
LOG_SPACE_TAU = 700.0

SERIES_RADIUS_MARGIN = 0.9 * math.pi


def osc_classical(params: PhysicalParams, spec: OscillatorSpec) -> ThermoQuartet:
    """Classical quartet: Z = prod(2*pi*T/omega_k), E = N*T, S = N + log Z."""
    n = spec.dimension
    T = params.T
    log_z = sum(math.log(2.0 * math.pi * T / w) for w in spec.frequencies)
    e = n * T
    s = n + log_z
    return ThermoQuartet(
        Z=math.exp(log_z), F=e - T * s, E=e, S=s, flavor="classical", T=T, log_Z=log_z
    )


def _log_tau_over_sinh(tau: float) -> float:
    # log(tau/sinh(tau)); log(sinh t) = t - log 2 + log1p(-e^{-2t}) avoids
    # overflow for large tau.
    if tau > LOG_SPACE_TAU:
        return math.log(tau) - (tau - math.log(2.0) + math.log1p(-math.exp(-2.0 * tau)))
    return math.log(tau / math.sinh(tau))


def _tau_over_tanh(tau: float) -> float:
    if tau > 20.0:
        # tanh saturates to 1 well inside double precision here
        return tau
    return tau / math.tanh(tau)


def osc_regularized(params: PhysicalParams, spec: OscillatorSpec) -> ThermoQuartet:
    """Regularized quartet Z_r = prod 2*pi*T*tau_k/(omega_k*sinh(tau_k))."""
    if params.h == 0:
        raise ValidationError("quantum sums need h > 0")
    reduced = reduce_oscillator(params, spec)
    T = params.T
    log_zr = sum(
        math.log(2.0 * math.pi * T / w) + _log_tau_over_sinh(tau)
        for w, tau in zip(spec.frequencies, reduced.tau)
    )
    e = T * sum(_tau_over_tanh(tau) for tau in reduced.tau)
    f = -T * log_zr
    s = (e - f) / T
    # Z may underflow deep in the quantum regime; keep it positive, the
    # log-space value carries the information.
    z = max(math.exp(log_zr), 5e-324)
    return ThermoQuartet(Z=z, F=f, E=e, S=s, flavor="regularized", T=T, log_Z=log_zr)


def f_ratio(taus) -> float:
    """Statistical-sum ratio prod_k tau_k/sinh(tau_k); 1 at tau = 0."""
    taus = tuple(float(t) for t in taus)
    if any(t < 0 for t in taus):
        raise ValidationError("tau must be >= 0")
    return math.exp(sum(_log_tau_over_sinh(t) for t in taus if t > 0))


def g_ratio(taus) -> float:
    """Mean-energy ratio (1/N) sum_k tau_k/tanh(tau_k); 1 at tau = 0."""
    taus = tuple(float(t) for t in taus)
    if not taus:
        raise ValidationError("need at least one tau")
    if any(t < 0 for t in taus):
        raise ValidationError("tau must be >= 0")
    return sum(_tau_over_tanh(t) if t > 0 else 1.0 for t in taus) / len(taus)


def bernoulli_even(k: int) -> Fraction:
    """B_{2k} as an exact Fraction via the binomial recurrence."""
    if k < 0:
        raise ValidationError("k must be >= 0")
    b: list[Fraction] = [Fraction(1)]  # B_0
    for m in range(1, k + 1):
        n = 2 * m
        # sum_{j=0}^{n} C(n+1, j) B_j = 0, with B_1 = -1/2 and odd B zero
        s = Fraction(comb(n + 1, 1), -2)  # B_1 contribution
        for j in range(m):
            s += comb(n + 1, 2 * j) * b[j]
        b.append(-s / (n + 1))
    return b[k]


@dataclass(frozen=True)
class BernoulliSeries:
    """Even-power series of a ratio function, radius of convergence pi.

    coefficients[j] multiplies tau^(2j); coefficients[0] = 1.
    """

    kind: str  # f_sinh | g_tanh
    coefficients: tuple[float, ...]
    radius: float = math.pi


def bernoulli_series(kind: str, order: int) -> BernoulliSeries:
    """Series of tau/sinh(tau) (f_sinh) or tau/tanh(tau) (g_tanh) to tau^(2K).

    f coefficients: 2*(1 - 2^(2n-1)) * B_{2n} / (2n)!
    g coefficients: 2^(2n) * B_{2n} / (2n)!
    """
    if kind not in ("f_sinh", "g_tanh"):
        raise ValidationError(f"unknown series kind {kind!r}")
    if order < 1:
        raise ValidationError("order must be >= 1")
    coeffs = [1.0]
    for n in range(1, order + 1):
        b2n = bernoulli_even(n)
        if kind == "f_sinh":
            c = 2 * (1 - Fraction(2) ** (2 * n - 1)) * b2n / factorial(2 * n)
        else:
            c = Fraction(2) ** (2 * n) * b2n / factorial(2 * n)
        coeffs.append(float(c))
    return BernoulliSeries(kind=kind, coefficients=tuple(coeffs))


def series_eval(series: BernoulliSeries, tau: float) -> float:
    """Horner evaluation in tau^2; restricted to |tau| <= 0.9*pi."""
    if abs(tau) > SERIES_RADIUS_MARGIN:
        raise ValidationError(
            f"|tau|={abs(tau)} outside the guaranteed convergence margin "
            f"{SERIES_RADIUS_MARGIN:.6f}"
        )
    t2 = tau * tau
    acc = 0.0
    for c in reversed(series.coefficients):
        acc = acc * t2 + c
    return acc


@dataclass(frozen=True)
class MonotonicityCertificate:
    """Closed-form derivatives of the three tau-dependent quantities."""

    z_ratio_slope: float  # d/dtau tau/sinh(tau), negative
    e_ratio_slope: float  # d/dtau tau/tanh(tau), positive
    entropy_slope: float  # d/dtau S_r, positive
    signs: tuple[int, int, int]


def monotonicity_certificates(tau: float) -> MonotonicityCertificate:
    if not (tau > 0):
        raise ValidationError(f"tau must be positive, got {tau}")
    sh = math.sinh(tau)
    dz = (sh - tau * math.cosh(tau)) / (sh * sh)
    de = (math.sinh(2.0 * tau) - 2.0 * tau) / (2.0 * sh * sh)
    ds = (sh * sh - tau * tau) / (tau * sh * sh)
    return MonotonicityCertificate(
        z_ratio_slope=dz,
        e_ratio_slope=de,
        entropy_slope=ds,
        signs=(-1 if dz < 0 else (0 if dz == 0 else 1),
               -1 if de < 0 else (0 if de == 0 else 1),
               -1 if ds < 0 else (0 if ds == 0 else 1)),
    )
