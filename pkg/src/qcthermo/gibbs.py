"""Variational free-energy minimization over probability distributions.

The discrete functional F(P) = sum P_n E_n + T sum P_n log P_n is minimized
over the simplex; the minimizer is the Gibbs distribution P_n proportional
to exp(-E_n/T) with minimum value -T log Z.  A phase-space discretization of
the continuous version is verified against the closed forms of the box and
the oscillator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    BoxGeometry,
    ConvergenceError,
    IntegrationError,
    OscillatorSpec,
    PhysicalParams,
    ValidationError,
)

__all__ = [
    "LevelSet",
    "SimplexPoint",
    "oscillator_level_set",
    "well_level_set",
    "gibbs_closed_form",
    "free_energy_functional",
    "MinimizeResult",
    "minimize_free_energy",
    "hessian_positivity_check",
    "PhaseSpaceCheck",
    "classical_phase_space_check",
]

MAX_ITERATIONS = 10**5
TAIL_BOUND_REL = 1e-12


@dataclass(frozen=True)
class LevelSet:
    """Finite increasing truncation of an energy spectrum."""

    energies: tuple[float, ...]
    truncation_tail_bound: float = 0.0

    def __init__(self, energies, truncation_tail_bound: float = 0.0):
        energies = tuple(float(e) for e in energies)
        if len(energies) < 2:
            raise ValidationError("need at least two levels")
        if any(b < a for a, b in zip(energies, energies[1:])):
            raise ValidationError("energies must be non-decreasing")
        object.__setattr__(self, "energies", energies)
        object.__setattr__(self, "truncation_tail_bound", float(truncation_tail_bound))


@dataclass(frozen=True)
class SimplexPoint:
    probabilities: tuple[float, ...]

    def __init__(self, probabilities):
        probabilities = tuple(float(p) for p in probabilities)
        if any(p < 0 for p in probabilities):
            raise ValidationError("probabilities must be >= 0")
        total = math.fsum(probabilities)
        if abs(total - 1.0) > 1e-12:
            raise ValidationError(f"probabilities must sum to 1, got {total}")
        object.__setattr__(self, "probabilities", probabilities)


def oscillator_level_set(params: PhysicalParams, omega: float) -> LevelSet:
    """Truncated 1-D oscillator spectrum h*omega*(n - 1/2).

    The cutoff M is chosen so the geometric tail is below TAIL_BOUND_REL of
    the retained sum.
    """
    if params.h <= 0 or omega <= 0:
        raise ValidationError("need h > 0 and omega > 0")
    step = params.h * omega / params.T
    # tail/Z = e^{-M*step}/(1-e^{-step}) / Z; solve crudely, then verify
    m = max(2, int(math.ceil(-math.log(TAIL_BOUND_REL * (1 - math.exp(-step)) ** 2) / step)) + 1)
    levels = [params.h * omega * (n - 0.5) for n in range(1, m + 1)]
    tail = math.exp(-(m + 0.5) * step) / (1.0 - math.exp(-step))
    return LevelSet(levels, truncation_tail_bound=tail)


def well_level_set(params: PhysicalParams, a: float) -> LevelSet:
    """Truncated 1-D box spectrum h^2 pi^2 n^2 / (2 m a^2)."""
    if params.h <= 0 or a <= 0:
        raise ValidationError("need h > 0 and a > 0")
    c = params.h**2 * math.pi**2 / (2.0 * params.m * a * a * params.T)
    m = max(2, int(math.ceil(math.sqrt(-math.log(TAIL_BOUND_REL) / c))) + 2)
    levels = [c * params.T * n * n for n in range(1, m + 1)]
    # integral comparison: sum_{n>M} e^{-c n^2} < int_M^inf e^{-c x^2} dx
    tail = 0.5 * math.sqrt(math.pi / c) * math.erfc(m * math.sqrt(c))
    return LevelSet(levels, truncation_tail_bound=tail)


def gibbs_closed_form(levels: LevelSet, T: float) -> SimplexPoint:
    """P_n = exp(-E_n/T)/Z, evaluated in log space."""
    if T <= 0:
        raise ValidationError("T must be positive")
    logits = np.array([-e / T for e in levels.energies])
    logits -= logits.max()
    w = np.exp(logits)
    return SimplexPoint(tuple(w / w.sum()))


def free_energy_functional(levels: LevelSet, T: float, point: SimplexPoint) -> float:
    """F = sum P E + T sum P log P, with 0*log(0) = 0."""
    acc = 0.0
    for p, e in zip(point.probabilities, levels.energies):
        if p > 0:
            acc += p * e + T * p * math.log(p)
    return acc


@dataclass(frozen=True)
class MinimizeResult:
    point: SimplexPoint
    F_min: float
    iterations: int


def minimize_free_energy(levels: LevelSet, T: float, tol: float) -> MinimizeResult:
    """Exponentiated-gradient descent of F over the simplex.

    Multiplicative update P <- P * exp(-eta * grad F) followed by
    renormalization, with eta = T/(max E - min E + T); stops when the
    sup-norm change drops below tol.
    """
    if T <= 0:
        raise ValidationError("T must be positive")
    if tol <= 0:
        raise ValidationError("tol must be positive")
    e = np.array(levels.energies)
    eta = T / (e.max() - e.min() + T)
    p = np.full(len(e), 1.0 / len(e))
    for iteration in range(1, MAX_ITERATIONS + 1):
        grad = e + T * (1.0 + np.log(p))
        q = p * np.exp(-eta * (grad - grad.min()) / T)
        q /= q.sum()
        if np.max(np.abs(q - p)) < tol:
            p = q
            break
        p = q
    else:
        raise ConvergenceError(f"no convergence after {MAX_ITERATIONS} iterations")
    point = SimplexPoint(tuple(p / p.sum()))
    return MinimizeResult(point, free_energy_functional(levels, T, point), iteration)


def hessian_positivity_check(
    levels: LevelSet, T: float, point: SimplexPoint, step: float = 1e-3
) -> bool:
    """Finite-difference check of the curvature structure of F.

    The diagonal second differences must be positive (they approximate
    T/P_n) and the mixed second differences must vanish relative to the
    diagonal scale.  Steps are relative to each coordinate so that
    near-boundary points keep the diagonal growth T/P_n resolvable.
    """
    p = np.array(point.probabilities)
    if np.any(p <= 0):
        raise ValidationError("interior simplex point required")
    e = np.array(levels.energies)

    def f(v):
        return float(np.sum(v * e) + T * np.sum(v * np.log(v)))

    n = len(p)
    hs = step * p
    diag = np.empty(n)
    for i in range(n):
        d = np.zeros(n)
        d[i] = hs[i]
        diag[i] = (f(p + d) - 2.0 * f(p) + f(p - d)) / hs[i] ** 2
    if np.any(diag <= 0):
        return False
    f_scale = abs(f(p)) + 1.0
    for i in range(n):
        for j in range(i + 1, n):
            di = np.zeros(n)
            dj = np.zeros(n)
            di[i] = hs[i]
            dj[j] = hs[j]
            mixed = (
                f(p + di + dj) - f(p + di - dj) - f(p - di + dj) + f(p - di - dj)
            ) / (4.0 * hs[i] * hs[j])
            # cancellation is exact in exact arithmetic; allow FD roundoff
            noise = 64.0 * np.finfo(float).eps * f_scale / (4.0 * hs[i] * hs[j])
            if abs(mixed) > 1e-3 * math.sqrt(diag[i] * diag[j]) + noise:
                return False
    return True


@dataclass(frozen=True)
class PhaseSpaceCheck:
    z_quadrature: float
    z_exact: float
    e_quadrature: float
    e_exact: float
    variational_ok: bool
    resolution: int


def classical_phase_space_check(
    params: PhysicalParams,
    system: BoxGeometry | OscillatorSpec,
    grid_resolution: int = 256,
    rng: np.random.Generator | None = None,
) -> PhaseSpaceCheck:
    """Trapezoidal phase-space quadrature against the closed forms.

    Reproduces Z_c and E_c of the 1-D box and oscillator, and checks that
    random simplex-preserving perturbations of the discretized Gibbs
    density never decrease the free energy.
    """
    if grid_resolution < 64:
        raise ValidationError("grid_resolution must be >= 64 per axis")
    if rng is None:
        rng = np.random.default_rng(0)
    T, m = params.T, params.m
    p_max = 12.0 * math.sqrt(m * T)

    if isinstance(system, OscillatorSpec):
        if system.dimension != 1:
            raise ValidationError("phase-space check is one-dimensional")
        w = system.frequencies[0]
        q_lo, q_hi = -12.0 * math.sqrt(T / m) / w, 12.0 * math.sqrt(T / m) / w

        def hamiltonian(qq, pp):
            return pp**2 / (2.0 * m) + m * w**2 * qq**2 / 2.0

        z_exact = 2.0 * math.pi * T / w
        e_exact = T
    elif isinstance(system, BoxGeometry):
        if system.dimension != 1:
            raise ValidationError("phase-space check is one-dimensional")
        q_lo, q_hi = 0.0, system.edges[0]

        def hamiltonian(qq, pp):
            return pp**2 / (2.0 * m) + 0.0 * qq

        z_exact = system.edges[0] * math.sqrt(2.0 * m * T * math.pi)
        e_exact = T / 2.0
    else:
        raise ValidationError(f"unsupported system {type(system).__name__}")

    def grids(resolution):
        qg = np.linspace(q_lo, q_hi, resolution)
        pg = np.linspace(-p_max, p_max, resolution)
        qq, pp = np.meshgrid(qg, pg, indexing="ij")
        ham = hamiltonian(qq, pp)
        wt = np.ones(resolution)
        wt[0] = wt[-1] = 0.5
        cl = np.outer(wt, wt) * (qg[1] - qg[0]) * (pg[1] - pg[0])
        return ham, cl

    ham, cell = grids(grid_resolution)
    boltz = np.exp(-ham / T)
    z_quad = float(np.sum(boltz * cell))

    # Richardson-style stability: compare against half the resolution
    ham2, cell2 = grids(grid_resolution // 2)
    z_quad2 = float(np.sum(np.exp(-ham2 / T) * cell2))
    if abs(z_quad - z_quad2) > 1e-5 * abs(z_quad):
        raise IntegrationError(
            f"quadrature unstable at resolution {grid_resolution}: "
            f"{z_quad} vs {z_quad2}"
        )
    e_quad = float(np.sum(ham * boltz * cell)) / z_quad

    # Variational test: the discretized Gibbs density minimizes the
    # discrete free energy among nearby densities.
    prob = boltz * cell
    prob /= prob.sum()
    mask = prob.ravel() > 1e-300
    pv = prob.ravel()[mask]
    hv = ham.ravel()[mask]
    cv = cell.ravel()[mask]

    def free_energy(pvec):
        return float(np.sum(pvec * hv) + T * np.sum(pvec * np.log(pvec / cv)))

    f0 = free_energy(pv)
    variational_ok = True
    for _ in range(20):
        d = rng.normal(size=pv.size)
        d -= d.mean()
        scale = 0.1 * np.min(pv / (np.abs(d) + 1e-300))
        trial = pv + scale * d
        trial /= trial.sum()
        if free_energy(trial) < f0 - 1e-12 * (1.0 + abs(f0)):
            variational_ok = False
            break

    return PhaseSpaceCheck(
        z_quadrature=z_quad,
        z_exact=z_exact,
        e_quadrature=e_quad,
        e_exact=e_exact,
        variational_ok=variational_ok,
        resolution=grid_resolution,
    )
