"""Quasi-classical limit drivers.

A sweep moves one knob (h -> 0, T -> inf, omega -> 0, a -> inf, m -> inf,
or N -> inf with shrinking reduced parameters) along a geometric grid,
collects regularized-vs-classical comparison reports per point, and fits
the leading-order rate of the deviation of each ratio from 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    BoxGeometry,
    ComparisonReport,
    OscillatorSpec,
    PhysicalParams,
    ReducedParams,
    ValidationError,
    reduce_oscillator,
    reduce_well,
    sign_with_zero_band,
)
from .oscillator import f_ratio, g_ratio, osc_classical, osc_regularized
from .well import well_classical, well_regularized

__all__ = [
    "WELL_DIRECTIONS",
    "OSCILLATOR_DIRECTIONS",
    "SweepPlan",
    "SweepRow",
    "FitResult",
    "SweepResult",
    "comparison_report",
    "run_sweep",
    "appendix_bounds_check",
    "fit_leading_order",
]

WELL_DIRECTIONS = ("h_to_0", "T_to_inf", "a_to_inf", "m_to_inf", "N_to_inf")
OSCILLATOR_DIRECTIONS = ("h_to_0", "T_to_inf", "omega_to_0", "N_to_inf")


@dataclass(frozen=True)
class SweepPlan:
    system: str  # well | oscillator
    direction: str
    grid: tuple[float, ...]
    base_params: PhysicalParams
    base_geometry: BoxGeometry | None = None
    base_spec: OscillatorSpec | None = None

    def __post_init__(self):
        if self.system not in ("well", "oscillator"):
            raise ValidationError(f"unknown system {self.system!r}")
        allowed = WELL_DIRECTIONS if self.system == "well" else OSCILLATOR_DIRECTIONS
        if self.direction not in allowed:
            raise ValidationError(
                f"direction {self.direction!r} not valid for {self.system}; "
                f"choose from {allowed}"
            )
        grid = tuple(float(g) for g in self.grid)
        if len(grid) < 6:
            raise ValidationError("grid needs at least 6 points")
        steps = [b - a for a, b in zip(grid, grid[1:])]
        if not (all(s > 0 for s in steps) or all(s < 0 for s in steps)):
            raise ValidationError("grid must be strictly monotone")
        object.__setattr__(self, "grid", grid)
        if self.system == "well" and self.base_geometry is None:
            raise ValidationError("well sweep needs base_geometry")
        if self.system == "oscillator" and self.base_spec is None:
            raise ValidationError("oscillator sweep needs base_spec")


@dataclass(frozen=True)
class SweepRow:
    swept_value: float
    report: ComparisonReport | None
    error: str | None = None


@dataclass(frozen=True)
class FitResult:
    coefficient: float
    slope: float
    residual_norm: float
    sign: int
    exponent_residual: float | None = None


@dataclass(frozen=True)
class SweepResult:
    plan: SweepPlan
    rows: tuple[SweepRow, ...]
    fitted_rates: dict[str, FitResult] = field(default_factory=dict)


def _well_residuals(reduced: ReducedParams, z_ratio, e_ratio) -> dict[str, float]:
    n = len(reduced.mu)
    z_pred = math.prod(1.0 - mu / 2.0 for mu in reduced.mu)
    e_pred = sum(1.0 / (1.0 - mu / 2.0) for mu in reduced.mu) / n if all(
        mu < 2.0 for mu in reduced.mu
    ) else math.nan
    return {
        "small_mu_product": abs(z_ratio - z_pred),
        "small_mu_energy": abs(e_ratio - e_pred) if math.isfinite(e_pred) else math.inf,
    }


def _osc_residuals(reduced: ReducedParams, z_ratio, e_ratio) -> dict[str, float]:
    n = len(reduced.tau)
    sum_t2 = sum(t * t for t in reduced.tau)
    return {
        "small_tau_quadratic_z": abs(z_ratio - (1.0 - sum_t2 / 6.0)),
        "small_tau_quadratic_e": abs(e_ratio - (1.0 + sum_t2 / (3.0 * n))),
    }


def comparison_report(
    params: PhysicalParams, system: BoxGeometry | OscillatorSpec
) -> ComparisonReport:
    """Classical-vs-regularized comparison at one parameter point."""
    if isinstance(system, BoxGeometry):
        classical = well_classical(params, system)
        regularized = well_regularized(params, system)
        reduced = reduce_well(params, system)
        residuals = _well_residuals
    elif isinstance(system, OscillatorSpec):
        classical = osc_classical(params, system)
        regularized = osc_regularized(params, system)
        reduced = reduce_oscillator(params, system)
        residuals = _osc_residuals
    else:
        raise ValidationError(f"unsupported system {type(system).__name__}")

    z_ratio = math.exp(regularized.log_Z - classical.log_Z)
    e_ratio = regularized.E / classical.E
    diffs = {
        "dF": regularized.F - classical.F,
        "dE": regularized.E - classical.E,
        "dS": regularized.S - classical.S,
    }
    signs = {
        "sgn_dF": sign_with_zero_band(diffs["dF"], classical.F),
        "sgn_dE": sign_with_zero_band(diffs["dE"], classical.E),
        "sgn_dS": sign_with_zero_band(diffs["dS"], classical.S),
    }
    return ComparisonReport(
        point=reduced,
        ratios={"Z_ratio": z_ratio, "E_ratio": e_ratio},
        diffs=diffs,
        signs=signs,
        asymptotic_residuals=residuals(reduced, z_ratio, e_ratio),
    )


def _point_at(plan: SweepPlan, value: float):
    p = plan.base_params
    d = plan.direction
    if d == "h_to_0":
        params = PhysicalParams(T=p.T, h=value, m=p.m)
        system = plan.base_geometry or plan.base_spec
    elif d == "T_to_inf":
        params = PhysicalParams(T=value, h=p.h, m=p.m)
        system = plan.base_geometry or plan.base_spec
    elif d == "m_to_inf":
        params = PhysicalParams(T=p.T, h=p.h, m=value)
        system = plan.base_geometry
    elif d == "a_to_inf":
        params = p
        system = BoxGeometry([a * value for a in plan.base_geometry.edges])
    elif d == "omega_to_0":
        params = p
        system = OscillatorSpec([w * value for w in plan.base_spec.frequencies])
    elif d == "N_to_inf":
        # growing dimension with h ~ 1/N so the reduced parameters shrink
        n = int(round(value))
        if n < 1:
            raise ValidationError(f"N must be >= 1, got {value}")
        params = PhysicalParams(T=p.T, h=p.h / n, m=p.m)
        if plan.system == "well":
            system = BoxGeometry(tuple(plan.base_geometry.edges) * n)
        else:
            system = OscillatorSpec(tuple(plan.base_spec.frequencies) * n)
    else:  # pragma: no cover - rejected by SweepPlan
        raise ValidationError(f"unknown direction {d!r}")
    return params, system


def run_sweep(plan: SweepPlan) -> SweepResult:
    """Evaluate the plan row by row; row failures are recorded, not raised."""
    rows = []
    for value in plan.grid:
        try:
            params, system = _point_at(plan, value)
            rows.append(SweepRow(value, comparison_report(params, system)))
        except Exception as exc:  # row-level error record
            rows.append(SweepRow(value, None, error=f"{type(exc).__name__}: {exc}"))

    fits = {}
    good = [(r.swept_value, r.report) for r in rows if r.report is not None]
    for key in ("Z_ratio", "E_ratio"):
        xs = [v for v, _ in good]
        ys = [rep.ratios[key] - 1.0 for _, rep in good]
        try:
            fits[key] = fit_leading_order(xs, ys)
        except ValidationError:
            pass
    return SweepResult(plan=plan, rows=tuple(rows), fitted_rates=fits)


def appendix_bounds_check(reduced: ReducedParams) -> bool:
    """Sandwich bounds: min <= mean <= max of mu, and of tau squared."""
    ok = True
    if reduced.mu:
        mean = sum(reduced.mu) / len(reduced.mu)
        ok &= reduced.nu <= mean * (1 + 1e-15) and mean <= reduced.eps * (1 + 1e-15)
    if reduced.tau:
        mean2 = sum(t * t for t in reduced.tau) / len(reduced.tau)
        ok &= reduced.kappa**2 <= mean2 * (1 + 1e-15)
        ok &= mean2 <= reduced.delta**2 * (1 + 1e-15)
    if not reduced.mu and not reduced.tau:
        raise ValidationError("no reduced parameters to check")
    return bool(ok)


def fit_leading_order(xs, ys, expected_slope: float | None = None) -> FitResult:
    """Fit |y| ~ coefficient * x^slope by least squares in log-log space."""
    xs = np.asarray([float(x) for x in xs])
    ys = np.asarray([float(y) for y in ys])
    if len(xs) < 4:
        raise ValidationError("need at least 4 points to fit a rate")
    if np.any(xs <= 0):
        raise ValidationError("fit abscissae must be positive")
    mask = np.abs(ys) > 1e-280
    if mask.sum() < 4:
        raise ValidationError("deviations underflowed; nothing to fit")
    sgns = np.sign(ys[mask])
    sign = int(sgns[0]) if np.all(sgns == sgns[0]) else 0
    lx, ly = np.log(xs[mask]), np.log(np.abs(ys[mask]))
    design = np.column_stack([np.ones_like(lx), lx])
    sol, *_ = np.linalg.lstsq(design, ly, rcond=None)
    resid = ly - design @ sol
    return FitResult(
        coefficient=float(np.exp(sol[0])),
        slope=float(sol[1]),
        residual_norm=float(np.linalg.norm(resid)),
        sign=sign,
        exponent_residual=(
            abs(float(sol[1]) - expected_slope) if expected_slope is not None else None
        ),
    )
