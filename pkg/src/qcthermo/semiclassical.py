"""Second-order semiclassical (h^2) expansion for smooth potentials.

Z0 = int exp(-V/T) dx and Z2 = 1/(24 m T^3) int exp(-V/T) |grad V|^2 dx are
evaluated by tensor-product Gauss-Legendre quadrature over automatically
chosen bounds; the quartet predictions follow

    Z_r ~ (2 pi m T)^(N/2) (Z0 - h^2 Z2)
    F_r ~ F_c + h^2 T Z2/Z0
    E_r ~ E_c + 2 h^2 T Z2/Z0
    S_r ~ S_c + h^2 Z2/Z0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import IntegrationError, PhysicalParams, ValidationError

__all__ = [
    "PotentialField",
    "harmonic_potential",
    "z0_integral",
    "z2_integral",
    "KWPrediction",
    "kw_expansion",
    "MAX_TENSOR_DIMENSION",
    "EXPANSION_VALIDITY",
]

MAX_TENSOR_DIMENSION = 4
QUADRATURE_ORDER = 64
# expansion parameter h^2 * Z2/Z0 beyond which predictions are flagged
EXPANSION_VALIDITY = 0.1

FD_GRADIENT_STEP = 1e-6


@dataclass(frozen=True)
class PotentialField:
    """Potential on R^N: vectorized evaluator and optional gradient.

    value takes an array of shape (..., N) and returns shape (...);
    gradient, when given, returns shape (..., N).  bounds, when given, is a
    sequence of per-axis (lo, hi) pairs; otherwise bounds are grown
    automatically until the Boltzmann factor is negligible on the boundary.
    """

    dimension: int
    value: Callable[[np.ndarray], np.ndarray]
    gradient: Callable[[np.ndarray], np.ndarray] | None = None
    bounds: tuple[tuple[float, float], ...] | None = None
    scale: float = 1.0

    def gradient_or_fd(self) -> Callable[[np.ndarray], np.ndarray]:
        """Analytic gradient, or central differences (reduced accuracy)."""
        if self.gradient is not None:
            return self.gradient
        step = FD_GRADIENT_STEP * self.scale

        def fd(x):
            x = np.asarray(x, dtype=float)
            out = np.empty(x.shape)
            for k in range(self.dimension):
                dx = np.zeros(x.shape[-1])
                dx[k] = step
                out[..., k] = (self.value(x + dx) - self.value(x - dx)) / (2.0 * step)
            return out

        return fd


def harmonic_potential(m: float, omegas) -> PotentialField:
    """V(x) = sum m*omega_k^2*x_k^2/2 with analytic gradient."""
    omegas = np.asarray([float(w) for w in omegas])
    if np.any(omegas <= 0) or m <= 0:
        raise ValidationError("need m > 0 and omega_k > 0")

    def value(x):
        x = np.asarray(x, dtype=float)
        return 0.5 * m * np.sum(omegas**2 * x**2, axis=-1)

    def gradient(x):
        x = np.asarray(x, dtype=float)
        return m * omegas**2 * x

    return PotentialField(
        dimension=len(omegas),
        value=value,
        gradient=gradient,
        scale=float(1.0 / omegas.min()),
    )


def _auto_bounds(potential: PotentialField, T: float) -> tuple[tuple[float, float], ...]:
    """Per-axis symmetric bounds with exp(-V/T) < 1e-16 * peak outside.

    Each half-width is grown by doubling and then shrunk back so the
    quadrature window stays as tight as the decay allows (wide windows
    waste Gauss-Legendre nodes).
    """
    n = potential.dimension
    center = np.zeros(n)
    peak = math.exp(-float(potential.value(center)) / T)
    if not math.isfinite(peak) or peak <= 0:
        raise IntegrationError("potential not finite at the origin")
    cutoff = 1e-16 * peak

    def face_value(axis, half):
        x = np.zeros(n)
        x[axis] = half
        lo = math.exp(-float(potential.value(x)) / T)
        x[axis] = -half
        return max(lo, math.exp(-float(potential.value(x)) / T))

    halves = []
    for k in range(n):
        half = potential.scale
        prev = math.inf
        for _ in range(200):
            val = face_value(k, half)
            if val < cutoff:
                break
            if val > prev * 0.999999 and val >= peak:
                raise IntegrationError(
                    "Boltzmann factor does not decay; potential looks non-integrable"
                )
            prev = val
            half *= 2.0
        else:
            raise IntegrationError("could not bound the integration domain")
        while face_value(k, 0.85 * half) < cutoff:
            half *= 0.85
        halves.append(half)

    # corners may decay slower than face centers for non-separable potentials
    for _ in range(60):
        corners = np.array(
            [[s * h for s, h in zip(signs, halves)] for signs in ((1,) * n, (-1,) * n)]
        )
        if float(np.exp(-potential.value(corners) / T).max()) < cutoff:
            break
        halves = [1.3 * h for h in halves]
    else:
        raise IntegrationError("could not bound the integration domain")
    return tuple((-h, h) for h in halves)


def _tensor_quadrature(potential: PotentialField, T: float, weight=None) -> float:
    n = potential.dimension
    if n > MAX_TENSOR_DIMENSION:
        raise ValidationError(
            f"tensor quadrature limited to N <= {MAX_TENSOR_DIMENSION}, got {n}"
        )
    bounds = potential.bounds or _auto_bounds(potential, T)

    def integrate(order):
        nodes, weights = np.polynomial.legendre.leggauss(order)
        axes, wts = [], []
        for lo, hi in bounds:
            mid, rad = 0.5 * (hi + lo), 0.5 * (hi - lo)
            axes.append(mid + rad * nodes)
            wts.append(rad * weights)
        grids = np.meshgrid(*axes, indexing="ij")
        x = np.stack(grids, axis=-1)
        integrand = np.exp(-potential.value(x) / T)
        if weight is not None:
            integrand = integrand * weight(x)
        w_total = wts[0]
        for w in wts[1:]:
            w_total = np.multiply.outer(w_total, w)
        return float(np.sum(integrand * w_total))

    value = integrate(QUADRATURE_ORDER)
    check = integrate(3 * QUADRATURE_ORDER // 4)
    if abs(value - check) > 1e-8 * (abs(value) + 1e-300):
        raise IntegrationError(
            f"quadrature unstable: {value} vs {check} at reduced order"
        )
    return value


def z0_integral(potential: PotentialField, T: float) -> float:
    """Configuration integral int exp(-V/T) dx."""
    if T <= 0:
        raise ValidationError("T must be positive")
    return _tensor_quadrature(potential, T)


def z2_integral(potential: PotentialField, T: float, m: float) -> float:
    """First quantum correction 1/(24 m T^3) int exp(-V/T) |grad V|^2 dx."""
    if T <= 0 or m <= 0:
        raise ValidationError("need T > 0 and m > 0")
    grad = potential.gradient_or_fd()
    value = _tensor_quadrature(
        potential, T, weight=lambda x: np.sum(grad(x) ** 2, axis=-1)
    )
    return value / (24.0 * m * T**3)


@dataclass(frozen=True)
class KWPrediction:
    Zr: float
    Fr: float
    Er: float
    Sr: float
    z2_over_z0: float
    expansion_parameter: float
    within_validity: bool


def kw_expansion(potential: PotentialField, params: PhysicalParams) -> KWPrediction:
    """Second-order predictions for the regularized quartet.

    Classical references are computed from the same quadrature: F_c from
    Z_c = (2 pi m T)^(N/2) Z0, E_c = N T/2 + <V>.
    """
    T, m, h = params.T, params.m, params.h
    n = potential.dimension
    z0 = z0_integral(potential, T)
    z2 = z2_integral(potential, T, m)
    ratio = z2 / z0
    v_mean = _tensor_quadrature(potential, T, weight=potential.value) / z0

    log_prefactor = 0.5 * n * math.log(2.0 * math.pi * m * T)
    f_c = -T * (log_prefactor + math.log(z0))
    e_c = 0.5 * n * T + v_mean
    s_c = (e_c - f_c) / T

    param = h * h * ratio
    zr = math.exp(log_prefactor) * (z0 - h * h * z2)
    fr = f_c + h * h * T * ratio
    er = e_c + 2.0 * h * h * T * ratio
    sr = s_c + h * h * ratio
    return KWPrediction(
        Zr=zr,
        Fr=fr,
        Er=er,
        Sr=sr,
        z2_over_z0=ratio,
        expansion_parameter=param,
        within_validity=param < EXPANSION_VALIDITY,
    )
