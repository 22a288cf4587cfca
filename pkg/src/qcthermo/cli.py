"""Command-line front end.

Subcommands: eval, sweep, hear-drum, gibbs, kw.  Output is JSON (schema in
docs/output.schema.json) or CSV with the documented stable headers; byte
identical across repeated invocations for a fixed seed.  Exit codes: 0
success, 2 validation error, 3 convergence/inversion/integration failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .core import (
    BoxGeometry,
    ConvergenceError,
    IntegrationError,
    InversionError,
    OscillatorSpec,
    PhysicalParams,
    ValidationError,
    reduce_oscillator,
    reduce_rho,
    reduce_well,
)
from .expressions import parse_number, parse_potential
from .gibbs import (
    LevelSet,
    free_energy_functional,
    gibbs_closed_form,
    minimize_free_energy,
)
from .oscillator import osc_regularized
from .semiclassical import PotentialField, harmonic_potential, kw_expansion
from .sweeps import SweepPlan, comparison_report, run_sweep
from .well import hear_the_drum, well_classical, well_regularized

__all__ = ["main", "run"]

MAX_DRUM_EDGES = 10


def _number_list(text: str) -> list[float]:
    try:
        return [parse_number(part) for part in text.split(",") if part.strip()]
    except ValidationError:
        raise
    except Exception as exc:
        raise ValidationError(f"malformed number list {text!r}") from exc


def _finite(x: float, name: str) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ConvergenceError(f"non-finite value in output field {name!r}")
    return float(format(x, ".17g"))


def _sanitize(obj, path="$"):
    if isinstance(obj, dict):
        return {k: _sanitize(v, f"{path}.{k}") for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v, f"{path}[{i}]") for i, v in enumerate(obj)]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (float, np.floating)):
        return _finite(obj, path)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    return obj


def _emit(payload: dict, csv_rows, args) -> None:
    payload = _sanitize(payload)
    if args.format == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        buf = io.StringIO()
        header, rows = csv_rows
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [format(v, ".17g") if isinstance(v, float) else v for v in _sanitize(row)]
            )
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _quartet_dict(q) -> dict:
    return {"Z": q.Z, "F": q.F, "E": q.E, "S": q.S, "log_Z": q.log_Z, "flavor": q.flavor}


def _reduced_dict(r) -> dict:
    out = {"rho": r.rho}
    if r.mu:
        out.update(mu=list(r.mu), lambda_theta=list(r.lambda_theta), eps=r.eps, nu=r.nu)
    if r.tau:
        out.update(tau=list(r.tau), delta=r.delta, kappa=r.kappa)
    return out


def _build_system(args):
    if args.system == "well":
        if not args.edges:
            raise ValidationError("well needs --edges")
        return BoxGeometry(_number_list(args.edges))
    if not args.omega:
        raise ValidationError("oscillator needs --omega")
    return OscillatorSpec(_number_list(args.omega))


def cmd_eval(args) -> None:
    params = PhysicalParams(T=args.T, h=args.h, m=args.m)
    system = _build_system(args)
    report = comparison_report(params, system)
    if isinstance(system, BoxGeometry):
        classical = well_classical(params, system)
        regularized = well_regularized(params, system)
        reduced = reduce_well(params, system)
    else:
        from .oscillator import osc_classical

        classical = osc_classical(params, system)
        regularized = osc_regularized(params, system)
        reduced = reduce_oscillator(params, system)
    payload = {
        "command": "eval",
        "version": __version__,
        "system": args.system,
        "params": {"T": params.T, "h": params.h, "m": params.m},
        "reduced": _reduced_dict(reduced),
        "classical": _quartet_dict(classical),
        "regularized": _quartet_dict(regularized),
        "ratios": report.ratios,
        "diffs": report.diffs,
        "signs": report.signs,
        "asymptotic_residuals": report.asymptotic_residuals,
    }
    flat = []

    def walk(prefix, obj):
        if isinstance(obj, dict):
            for k in sorted(obj):
                walk(f"{prefix}.{k}" if prefix else k, obj[k])
        elif isinstance(obj, list):
            for i, v in enumerate(obj):
                walk(f"{prefix}[{i}]", v)
        else:
            flat.append((prefix, obj))

    walk("", payload)
    _emit(payload, (["key", "value"], flat), args)


def cmd_sweep(args) -> None:
    params = PhysicalParams(T=args.T, h=args.h, m=args.m)
    system = _build_system(args)
    if args.points < 1:
        raise ValidationError("--points must be >= 1")
    grid = tuple(args.start * args.factor**k for k in range(args.points))
    plan = SweepPlan(
        system=args.system,
        direction=args.direction,
        grid=grid,
        base_params=params,
        base_geometry=system if isinstance(system, BoxGeometry) else None,
        base_spec=system if isinstance(system, OscillatorSpec) else None,
    )
    result = run_sweep(plan)
    residual_names = sorted(
        {name for row in result.rows if row.report for name in row.report.asymptotic_residuals}
    )
    header = [
        "swept_value", "Z_ratio", "E_ratio", "dF", "dE", "dS",
        "sgn_dF", "sgn_dE", "sgn_dS",
    ] + [f"residual_{n}" for n in residual_names]
    csv_out, json_rows = [], []
    for row in result.rows:
        if row.report is None:
            json_rows.append({"swept_value": row.swept_value, "error": row.error})
            continue
        rep = row.report
        csv_out.append(
            [row.swept_value, rep.ratios["Z_ratio"], rep.ratios["E_ratio"],
             rep.diffs["dF"], rep.diffs["dE"], rep.diffs["dS"],
             rep.signs["sgn_dF"], rep.signs["sgn_dE"], rep.signs["sgn_dS"]]
            + [rep.asymptotic_residuals[n] for n in residual_names]
        )
        json_rows.append(
            {
                "swept_value": row.swept_value,
                "ratios": rep.ratios,
                "diffs": rep.diffs,
                "signs": rep.signs,
                "asymptotic_residuals": rep.asymptotic_residuals,
            }
        )
    payload = {
        "command": "sweep",
        "version": __version__,
        "system": args.system,
        "direction": args.direction,
        "rows": json_rows,
        "fitted_rates": {
            key: {
                "coefficient": fit.coefficient,
                "slope": fit.slope,
                "residual_norm": fit.residual_norm,
                "sign": fit.sign,
            }
            for key, fit in sorted(result.fitted_rates.items())
        },
    }
    _emit(payload, (header, csv_out), args)


def cmd_hear_drum(args) -> None:
    edges = _number_list(args.edges)
    geom = BoxGeometry(edges)
    n = geom.dimension
    if n > MAX_DRUM_EDGES:
        raise ValidationError(f"at most {MAX_DRUM_EDGES} edges supported, got {n}")
    T, m = args.T, args.m
    count = max(args.samples, n + 2)
    rho_unit = math.sqrt(math.pi / (2.0 * m * T))
    samples = []
    for i in range(count):
        rho = min(geom.edges) * 0.01 * (i + 1)
        h = rho / rho_unit
        params = PhysicalParams(T=T, h=h, m=m)
        ratio = math.exp(
            well_regularized(params, geom).log_Z - well_classical(params, geom).log_Z
        )
        samples.append((rho, ratio))
    recovered = hear_the_drum(samples, n)
    true_sorted = sorted(geom.edges)
    round_trip = max(
        abs(r - t) / t for r, t in zip(recovered, true_sorted)
    )
    payload = {
        "command": "hear_drum",
        "version": __version__,
        "edges": list(geom.edges),
        "samples": [{"rho": r, "ratio": v} for r, v in samples],
        "recovered_edges": list(recovered),
        "round_trip_error": round_trip,
    }
    rows = [[r, t] for r, t in zip(recovered, true_sorted)]
    _emit(payload, (["recovered_edge", "true_edge"], rows), args)


def cmd_gibbs(args) -> None:
    energies = _number_list(args.levels)
    levels = LevelSet(sorted(energies))
    if args.tol <= 0:
        raise ValidationError("--tol must be > 0")
    result = minimize_free_energy(levels, args.T, args.tol)
    closed = gibbs_closed_form(levels, args.T)
    tv = 0.5 * sum(
        abs(a - b) for a, b in zip(result.point.probabilities, closed.probabilities)
    )
    f_closed = free_energy_functional(levels, args.T, closed)
    rng = np.random.default_rng(args.seed)
    min_gap = math.inf
    for _ in range(args.random_points):
        raw = rng.random(len(levels.energies))
        from .gibbs import SimplexPoint

        point = SimplexPoint(tuple(raw / raw.sum()))
        min_gap = min(
            min_gap, free_energy_functional(levels, args.T, point) - f_closed
        )
    payload = {
        "command": "gibbs",
        "version": __version__,
        "levels": list(levels.energies),
        "T": args.T,
        "F_min": result.F_min,
        "F_closed_form": f_closed,
        "iterations": result.iterations,
        "probabilities": list(result.point.probabilities),
        "closed_form_probabilities": list(closed.probabilities),
        "total_variation_distance": tv,
        "random_check": {
            "seed": args.seed,
            "points": args.random_points,
            "min_excess_free_energy": min_gap,
        },
    }
    rows = [[i, e, p] for i, (e, p) in enumerate(zip(levels.energies, result.point.probabilities))]
    _emit(payload, (["level", "energy", "probability"], rows), args)


def cmd_kw(args) -> None:
    params = PhysicalParams(T=args.T, h=args.h, m=args.m)
    if args.potential:
        dim = args.dim
        value = parse_potential(args.potential, dim)
        potential = PotentialField(dimension=dim, value=value, scale=args.scale)
        exact = None
    elif args.omega:
        omegas = _number_list(args.omega)
        potential = harmonic_potential(args.m, omegas)
        exact = (
            osc_regularized(params, OscillatorSpec(omegas)) if args.h > 0 else None
        )
    else:
        raise ValidationError("kw needs --potential or --omega")
    prediction = kw_expansion(potential, params)
    payload = {
        "command": "kw",
        "version": __version__,
        "params": {"T": params.T, "h": params.h, "m": params.m},
        "z2_over_z0": prediction.z2_over_z0,
        "expansion_parameter": prediction.expansion_parameter,
        "within_validity": prediction.within_validity,
        "predicted": {
            "Zr": prediction.Zr,
            "Fr": prediction.Fr,
            "Er": prediction.Er,
            "Sr": prediction.Sr,
        },
    }
    if exact is not None:
        payload["exact"] = _quartet_dict(exact)
        payload["prediction_residuals"] = {
            "Fr": abs(prediction.Fr - exact.F),
            "Er": abs(prediction.Er - exact.E),
            "Sr": abs(prediction.Sr - exact.S),
        }
    rows = [["z2_over_z0", prediction.z2_over_z0],
            ["Zr", prediction.Zr], ["Fr", prediction.Fr],
            ["Er", prediction.Er], ["Sr", prediction.Sr]]
    _emit(payload, (["key", "value"], rows), args)


def _add_common(parser):
    parser.add_argument("--format", choices=["json", "csv"],
                        default=os.environ.get("QCTHERMO_FORMAT", "json"))
    parser.add_argument("--out", default=None, help="output path (default stdout)")
    parser.add_argument("--seed", type=int, default=0)


def _add_physics(parser, need_h=True):
    parser.add_argument("--T", type=parse_number, required=True)
    parser.add_argument("--m", type=parse_number, default=1.0)
    if need_h:
        parser.add_argument("--h", type=parse_number, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcthermo",
        description="Classical vs regularized quantum thermodynamics of boxes "
        "and harmonic oscillators",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("eval", help="quartets and comparison at one point")
    p.add_argument("--system", choices=["well", "oscillator"], required=True)
    p.add_argument("--edges", default=None, help="comma-separated edges")
    p.add_argument("--omega", default=None, help="comma-separated frequencies")
    _add_physics(p)
    _add_common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="quasi-classical limit sweep")
    p.add_argument("--system", choices=["well", "oscillator"], required=True)
    p.add_argument("--direction", required=True)
    p.add_argument("--edges", default=None)
    p.add_argument("--omega", default=None)
    p.add_argument("--start", type=parse_number, required=True)
    p.add_argument("--factor", type=parse_number, required=True)
    p.add_argument("--points", type=int, required=True)
    _add_physics(p)
    _add_common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("hear-drum", help="recover box edges from ratio samples")
    p.add_argument("--edges", required=True)
    p.add_argument("--samples", type=int, default=8)
    _add_physics(p, need_h=False)
    _add_common(p)
    p.set_defaults(func=cmd_hear_drum)

    p = sub.add_parser("gibbs", help="variational free-energy minimization")
    p.add_argument("--levels", required=True, help="comma-separated energies")
    p.add_argument("--T", type=parse_number, required=True)
    p.add_argument("--tol", type=parse_number, default=1e-10)
    p.add_argument("--random-points", type=int, default=100)
    _add_common(p)
    p.set_defaults(func=cmd_gibbs)

    p = sub.add_parser("kw", help="semiclassical h^2 expansion")
    p.add_argument("--omega", default=None)
    p.add_argument("--potential", default=None, help="expression in x1..xN")
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--scale", type=parse_number, default=1.0)
    _add_physics(p)
    _add_common(p)
    p.set_defaults(func=cmd_kw)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConvergenceError, InversionError, IntegrationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
