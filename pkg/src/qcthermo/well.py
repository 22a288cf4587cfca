"""Thermodynamics of the N-dimensional box potential well.

Classical closed forms, regularized quantum values built from the lattice
sums in :mod:`qcthermo.theta`, the small-parameter geometric expansion of the
statistical-sum ratio, and recovery of the edges from sampled ratios.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    BoxGeometry,
    ConvergenceError,
    InversionError,
    PhysicalParams,
    ThermoQuartet,
    ValidationError,
    reduce_well,
)
from .theta import CROSSOVER_MU, energy_sum, theta, w_pair

__all__ = [
    "well_classical",
    "well_regularized",
    "well_energy_ratio",
    "EntropyAsymptote",
    "well_entropy_asymptotic",
    "GeometricCoefficients",
    "geometric_coefficients",
    "kac_expansion_ratio",
    "kac_mean_energy_ratio",
    "hear_the_drum",
    "ASYMPTOTIC_EPS_LIMIT",
]

# e^{-4*pi/eps^2} < 1e-60 for eps <= 0.3: the neglected tail of the
# small-parameter expansions is far below float noise in this range.
ASYMPTOTIC_EPS_LIMIT = 0.3


def well_classical(params: PhysicalParams, geom: BoxGeometry) -> ThermoQuartet:
    """Classical quartet: Z = (2mT*pi)^(N/2) * prod(a_k), E = N*T/2."""
    n = geom.dimension
    T = params.T
    log_z = sum(math.log(a * math.sqrt(2.0 * params.m * T * math.pi)) for a in geom.edges)
    z = math.exp(log_z)
    e = 0.5 * n * T
    s = 0.5 * n + log_z
    f = e - T * s
    return ThermoQuartet(Z=z, F=f, E=e, S=s, flavor="classical", T=T, log_Z=log_z)


def well_regularized(params: PhysicalParams, geom: BoxGeometry) -> ThermoQuartet:
    """Regularized quantum quartet (2*pi*h)^N * prod_k Z_q(mu_k)."""
    if params.h == 0:
        raise ValidationError("quantum sums need h > 0")
    reduced = reduce_well(params, geom)
    T = params.T
    log_zq = 0.0
    e = 0.0
    for mu in reduced.mu:
        zq = theta(mu).value
        if zq <= 0.0:
            raise ConvergenceError(f"lattice sum underflowed at mu={mu}")
        log_zq += math.log(zq)
        e += T * energy_sum(mu) / zq
    n = geom.dimension
    log_zr = n * math.log(2.0 * math.pi * params.h) + log_zq
    f = -T * log_zr
    s = (e - f) / T
    return ThermoQuartet(
        Z=math.exp(log_zr), F=f, E=e, S=s, flavor="regularized", T=T, log_Z=log_zr
    )


def well_energy_ratio(mu: float) -> float:
    """Mean-energy ratio (regularized over classical) for one box axis.

    Equals W1/W0 in the transformed representation; always > 1.
    """
    if not (mu > 0):
        raise ValidationError(f"mu must be positive, got {mu}")
    if mu >= CROSSOVER_MU:
        return 2.0 * energy_sum(mu) / theta(mu).value
    w0, w1 = w_pair(4.0 / (math.pi * mu * mu))
    return w1 / w0


@dataclass(frozen=True)
class EntropyAsymptote:
    value: float
    within_validity: bool


def well_entropy_asymptotic(params: PhysicalParams, geom: BoxGeometry) -> EntropyAsymptote:
    """Small-mu entropy prediction S_c - sum(mu_k)/4.

    within_validity is False once max(mu_k) exceeds ASYMPTOTIC_EPS_LIMIT.
    """
    reduced = reduce_well(params, geom)
    s_c = well_classical(params, geom).S
    value = s_c - sum(reduced.mu) / 4.0
    return EntropyAsymptote(value, reduced.eps <= ASYMPTOTIC_EPS_LIMIT)


@dataclass(frozen=True)
class GeometricCoefficients:
    """Elementary symmetric sums of the edges and box face measures.

    U[k] is the k-th elementary symmetric sum of the edges (U[0] = 1,
    U[N] = volume).  V[k] = U[k] * 2^(N-k) is the total k-dimensional
    measure of the box skeleton: V[N] volume, V[N-1] boundary area, ...,
    V[0] = 2^N vertices.
    """

    U: tuple[float, ...]
    V: tuple[float, ...]


def geometric_coefficients(geom: BoxGeometry) -> GeometricCoefficients:
    n = geom.dimension
    u = [1.0] + [0.0] * n
    for a in geom.edges:
        for k in range(min(n, len(u) - 1), 0, -1):
            u[k] += a * u[k - 1]
    v = tuple(u[k] * 2.0 ** (n - k) for k in range(n + 1))
    return GeometricCoefficients(U=tuple(u), V=v)


def kac_expansion_ratio(geom: BoxGeometry, rho: float) -> float:
    """Geometric expansion of the statistical-sum ratio.

    U_N^(-1) * sum_k (-1)^k rho^k U_{N-k}; exact for boxes, where it equals
    prod_k (1 - rho/a_k).
    """
    if rho < 0:
        raise ValidationError(f"rho must be >= 0, got {rho}")
    coeffs = geometric_coefficients(geom)
    n = geom.dimension
    terms = [(-1.0) ** k * rho**k * coeffs.U[n - k] for k in range(n + 1)]
    return math.fsum(terms) / coeffs.U[n]


def kac_mean_energy_ratio(geom: BoxGeometry, rho: float) -> float:
    """Leading-order mean-energy ratio 1 + rho * V_{N-1} / (2N * V_N)."""
    if rho < 0:
        raise ValidationError(f"rho must be >= 0, got {rho}")
    coeffs = geometric_coefficients(geom)
    n = geom.dimension
    return 1.0 + rho * coeffs.V[n - 1] / (2.0 * n * coeffs.V[n])


def hear_the_drum(samples, n_edges: int) -> tuple[float, ...]:
    """Recover box edges from samples of the statistical-sum ratio.

    samples are (rho, ratio) pairs with ratio ~ prod_k (1 - rho/a_k).  A
    degree-n_edges polynomial with constant term 1 is fitted by least
    squares in the monomial basis (columns scaled by rho powers); its roots
    in rho are the edges.
    """
    samples = [(float(r), float(v)) for r, v in samples]
    if n_edges < 1:
        raise ValidationError("n_edges must be >= 1")
    if len(samples) < n_edges + 1:
        raise ValidationError(
            f"need at least {n_edges + 1} samples to recover {n_edges} edges"
        )
    rhos = np.array([r for r, _ in samples])
    ys = np.array([v for _, v in samples]) - 1.0
    if len(set(rhos.tolist())) != len(rhos):
        raise ValidationError("sample rho values must be distinct")

    # Design matrix for rho^1..rho^N; columns scaled to unit norm to keep
    # the tiny Vandermonde system well conditioned.
    powers = np.vander(rhos, n_edges + 1, increasing=True)[:, 1:]
    scale = np.linalg.norm(powers, axis=0)
    coeffs, *_ = np.linalg.lstsq(powers / scale, ys, rcond=None)
    coeffs /= scale

    # Roots of 1 + c_1 rho + ... + c_N rho^N are the edges.
    poly = np.concatenate(([1.0], coeffs))[::-1]
    roots = np.roots(poly)
    imag_tol = 1e-5 * (1.0 + np.abs(roots))
    if np.any(np.abs(roots.imag) > imag_tol):
        raise InversionError(
            "complex edge estimates; rho samples too large or too noisy"
        )
    edges = np.sort(roots.real)
    if np.any(edges <= 0):
        raise InversionError("non-positive edge estimates")
    return tuple(float(a) for a in edges)
