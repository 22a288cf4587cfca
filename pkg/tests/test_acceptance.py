"""Acceptance gate: thirteen pinned criteria, one printed verdict line each.

Each test prints "ACCEPT <nn> <name>: PASS/FAIL" before asserting, so the
verbose run reads as a checklist.  Tolerances are fixed here and must not be
loosened; reference numbers are frozen from independent high-precision
evaluations (mpmath, 40 digits) or closed forms.
"""

import math
import subprocess
import sys

import numpy as np
import pytest

from qcthermo.core import BoxGeometry, OscillatorSpec, PhysicalParams
from qcthermo.gibbs import (
    LevelSet,
    SimplexPoint,
    classical_phase_space_check,
    free_energy_functional,
    gibbs_closed_form,
    hessian_positivity_check,
    minimize_free_energy,
)
from qcthermo.oscillator import (
    bernoulli_series,
    f_ratio,
    g_ratio,
    monotonicity_certificates,
    osc_classical,
    osc_regularized,
    series_eval,
)
from qcthermo.semiclassical import harmonic_potential, kw_expansion, z0_integral, z2_integral
from qcthermo.sweeps import fit_leading_order
from qcthermo.theta import (
    energy_sum,
    small_mu_slope_witnesses,
    theta,
    theta_direct,
    theta_poisson,
)
from qcthermo.well import (
    geometric_coefficients,
    hear_the_drum,
    kac_expansion_ratio,
    kac_mean_energy_ratio,
    well_classical,
    well_regularized,
)


def verdict(number, name, ok):
    print(f"ACCEPT {number:02d} {name}: {'PASS' if ok else 'FAIL'}")
    assert ok, f"acceptance criterion {number} ({name}) failed"


def well_point(mus, m=1.0):
    """Params and geometry realizing the target per-axis mu values."""
    T = 2.0 * math.pi
    h = 1.0
    edges = [h * math.sqrt(2.0 * math.pi / (m * T)) / mu for mu in mus]
    return PhysicalParams(T=T, h=h, m=m), BoxGeometry(edges)


def osc_point(taus, T=1.0):
    h = 0.5
    freqs = [2.0 * T * tau / h for tau in taus]
    return PhysicalParams(T=T, h=h, m=1.0), OscillatorSpec(freqs)


def test_01_poisson_duality():
    mus = np.linspace(0.3, 3.0, 200)
    worst = max(
        abs(theta_direct(mu).value - theta_poisson(mu).value)
        / abs(theta_direct(mu).value)
        for mu in mus
    )
    verdict(1, "poisson_duality", worst <= 1e-12)


def test_02_lemma_witnesses():
    w = small_mu_slope_witnesses()
    ok = (
        abs(w.integral_to_one - 0.0025665) / 0.0025665 < 0.01
        and abs(w.integrand_at_one - 3.420e-14) / 3.420e-14 < 0.01
        and w.slope_bound < 0
    )
    verdict(2, "lemma_witnesses", ok)


def test_03_well_asymptotics_at_mu_02():
    params, geom = well_point([0.2])
    z_ratio = math.exp(
        well_regularized(params, geom).log_Z - well_classical(params, geom).log_Z
    )
    e_ratio = well_regularized(params, geom).E / well_classical(params, geom).E
    ok = abs(z_ratio - 0.9) <= 1e-12 and abs(e_ratio - 1.0 / 0.9) <= 1e-12
    verdict(3, "well_asymptotics_mu_02", ok)


def test_04_well_inequalities_grid():
    ok = True
    for n in (1, 2, 3):
        for mu0 in np.geomspace(0.05, 5.0, 20):
            for spread in np.linspace(1.0, 1.5, 20):
                mus = [min(mu0 * spread**k, 5.0) for k in range(n)]
                params, geom = well_point(mus)
                reg = well_regularized(params, geom)
                cla = well_classical(params, geom)
                ok &= reg.log_Z < cla.log_Z
                ok &= reg.E > cla.E
                ok &= reg.F > cla.F
                if max(mus) <= 0.5:
                    ok &= reg.S < cla.S
                # sign hypothesis: dF and dE agree in sign
                ok &= (reg.F > cla.F) == (reg.E > cla.E)
                if not ok:
                    break
    verdict(4, "well_inequalities_grid", ok)


def test_05_oscillator_monotonicity():
    taus = np.linspace(0.05, 5.0, 120)
    fs = [f_ratio([t]) for t in taus]
    gs = [g_ratio([t]) for t in taus]
    ok = all(b < a for a, b in zip(fs, fs[1:]))
    ok &= all(b > a for a, b in zip(gs, gs[1:]))
    for t in taus:
        params, spec = osc_point([t])
        ok &= osc_regularized(params, spec).S > osc_classical(params, spec).S
    # closed-form derivative signs against central differences
    for t in (0.2, 1.0, 3.0):
        cert = monotonicity_certificates(t)
        h = 1e-6
        fd_z = (f_ratio([t + h]) - f_ratio([t - h])) / (2 * h)
        fd_e = (g_ratio([t + h]) - g_ratio([t - h])) / (2 * h)
        ok &= cert.signs == (-1, 1, 1)
        ok &= abs(cert.z_ratio_slope - fd_z) < 1e-7 * (1 + abs(fd_z))
        ok &= abs(cert.e_ratio_slope - fd_e) < 1e-7 * (1 + abs(fd_e))
    verdict(5, "oscillator_monotonicity", ok)


def test_06_bernoulli_series_orders():
    taus = [0.5 * 0.88**k for k in range(6)]
    ok = True
    # order-2 truncations: 1 - tau^2/6 for the product law; the energy law's
    # quadratic coefficient follows from the same Bernoulli table
    f1 = bernoulli_series("f_sinh", 1)
    ok &= f1.coefficients == (1.0, -1.0 / 6.0)
    for order in range(1, 6):
        f = bernoulli_series("f_sinh", order)
        g = bernoulli_series("g_tanh", order)
        rf = [abs(series_eval(f, t) - t / math.sinh(t)) for t in taus]
        rg = [abs(series_eval(g, t) - t / math.tanh(t)) for t in taus]
        sf = fit_leading_order(taus, rf).slope
        sg = fit_leading_order(taus, rg).slope
        expected = 2 * order + 2
        ok &= abs(sf - expected) <= 0.1
        ok &= abs(sg - expected) <= 0.1
    verdict(6, "bernoulli_series_orders", ok)


def test_07_gibbs_variational():
    rng = np.random.default_rng(42)
    ok = True
    for _ in range(50):
        n = int(rng.integers(2, 7))
        energies = np.sort(rng.uniform(0.0, 5.0, n))
        T = float(rng.uniform(0.5, 2.0))
        levels = LevelSet(energies)
        result = minimize_free_energy(levels, T, tol=1e-12)
        closed = gibbs_closed_form(levels, T)
        tv = 0.5 * sum(
            abs(a - b)
            for a, b in zip(result.point.probabilities, closed.probabilities)
        )
        z = sum(math.exp(-e / T) for e in energies)
        ok &= tv <= 1e-8
        ok &= abs(result.F_min - (-T * math.log(z))) <= 1e-8
    # 1000 random simplex points never beat the Gibbs point
    levels = LevelSet([0.0, 1.0, 2.0, 3.5])
    T = 1.0
    f_gibbs = free_energy_functional(levels, T, gibbs_closed_form(levels, T))
    for _ in range(1000):
        raw = rng.random(4)
        point = SimplexPoint(tuple(raw / raw.sum()))
        ok &= free_energy_functional(levels, T, point) >= f_gibbs - 1e-12
    ok &= hessian_positivity_check(levels, T, gibbs_closed_form(levels, T))
    verdict(7, "gibbs_variational", ok)


def test_08_classical_quadrature():
    params = PhysicalParams(T=1.3, h=0.0, m=0.8)
    ok = True
    for system in (OscillatorSpec([1.7]), BoxGeometry([2.0])):
        check = classical_phase_space_check(params, system)
        ok &= abs(check.z_quadrature - check.z_exact) <= 1e-5 * abs(check.z_exact)
        ok &= abs(check.e_quadrature - check.e_exact) <= 1e-5 * abs(check.e_exact)
        ok &= check.variational_ok
    verdict(8, "classical_quadrature", ok)


def test_09_kirkwood_wigner():
    ok = True
    for omega in (0.5, 1.0, 2.0):
        for T in (0.5, 1.0, 2.0):
            pot = harmonic_potential(1.0, [omega])
            ratio = z2_integral(pot, T, 1.0) / z0_integral(pot, T)
            expected = omega**2 / (24.0 * T * T)
            ok &= abs(ratio - expected) <= 1e-7 * expected
    # predicted free energy converges to the exact one at rate h^4
    hs = [0.4 * 0.5**k for k in range(4)]
    residuals = []
    for h in hs:
        params = PhysicalParams(T=1.0, h=h, m=1.0)
        pred = kw_expansion(harmonic_potential(1.0, [1.0]), params)
        exact = osc_regularized(params, OscillatorSpec([1.0]))
        residuals.append(abs(pred.Fr - exact.F))
    slope = fit_leading_order(hs, residuals).slope
    ok &= abs(slope - 4.0) <= 0.1
    verdict(9, "kirkwood_wigner", ok)


def test_10_kac_geometry():
    geom = BoxGeometry([1.0, 2.0, 3.0])
    coeffs = geometric_coefficients(geom)
    ok = coeffs.V == (8.0, 24.0, 22.0, 6.0)
    # expansion equals the edge product to 1 ulp
    for rho in (0.01, 0.05, 0.1, 0.3):
        got = kac_expansion_ratio(geom, rho)
        want = (1.0 - rho) * (1.0 - rho / 2.0) * (1.0 - rho / 3.0)
        ok &= abs(got - want) <= math.ulp(want)
    # leading mean-energy correction within 2 percent at rho = 0.01
    rho = 0.01
    h = rho / math.sqrt(math.pi / 2.0)
    params = PhysicalParams(T=1.0, h=h, m=1.0)
    e_ratio = well_regularized(params, geom).E / well_classical(params, geom).E
    predicted = kac_mean_energy_ratio(geom, rho)
    ok &= abs((e_ratio - 1.0) - (predicted - 1.0)) <= 0.02 * (predicted - 1.0)
    verdict(10, "kac_geometry", ok)


def _round_trip(edges, count):
    geom = BoxGeometry(edges)
    rows = []
    for i in range(1, count + 1):
        rho = min(edges) * 0.01 * i
        h = rho / math.sqrt(math.pi / 2.0)
        params = PhysicalParams(T=1.0, h=h, m=1.0)
        ratio = math.exp(
            well_regularized(params, geom).log_Z - well_classical(params, geom).log_Z
        )
        rows.append((rho, ratio))
    return hear_the_drum(rows, len(edges))


def test_11_hear_the_drum():
    rec3 = _round_trip([1.0, 2.0, 3.0], 8)
    rec2 = _round_trip([2.0, 2.0], 6)
    ok = max(abs(r - t) for r, t in zip(rec3, (1.0, 2.0, 3.0))) <= 1e-6
    ok &= max(abs(r - 2.0) for r in rec2) <= 1e-4
    verdict(11, "hear_the_drum", ok)


def _limit_case(system, build):
    """Run a grid towards the classical limit; return (final report, slope)."""
    from qcthermo.sweeps import comparison_report

    rows = []
    for value in build["grid"]:
        params, target = build["point"](value)
        rows.append(comparison_report(params, target))
    final = rows[-1]
    if system == "well":
        xs = [r.point.eps for r in rows]
        expected = 1.0
    else:
        xs = [r.point.delta for r in rows]
        expected = 2.0
    ok = abs(final.ratios["Z_ratio"] - 1.0) <= 1e-6
    ok &= abs(final.ratios["E_ratio"] - 1.0) <= 1e-6
    for key in ("Z_ratio", "E_ratio"):
        slope = fit_leading_order(xs, [r.ratios[key] - 1.0 for r in rows]).slope
        ok &= abs(slope - expected) <= 0.1
    return ok


def test_12_quasiclassical_limits():
    geom = BoxGeometry([1.0])
    spec = OscillatorSpec([1.0])
    t2pi = 2.0 * math.pi
    cases = [
        ("well", {  # h -> 0
            "grid": [1e-4 * 0.5**k for k in range(8)],
            "point": lambda h: (PhysicalParams(T=t2pi, h=h, m=1.0), geom),
        }),
        ("well", {  # T -> inf
            "grid": [1e2 * 10.0**k for k in range(8)],
            "point": lambda T: (PhysicalParams(T=T, h=0.01, m=1.0), geom),
        }),
        ("well", {  # a -> inf
            "grid": [1e1 * 10.0**k for k in range(8)],
            "point": lambda s: (
                PhysicalParams(T=t2pi, h=0.01, m=1.0),
                BoxGeometry([s]),
            ),
        }),
        ("well", {  # m -> inf
            "grid": [1e2 * 10.0**k for k in range(8)],
            "point": lambda m: (PhysicalParams(T=t2pi, h=0.01, m=m), geom),
        }),
        ("oscillator", {  # h -> 0
            "grid": [0.01 * 0.5**k for k in range(8)],
            "point": lambda h: (PhysicalParams(T=1.0, h=h, m=1.0), spec),
        }),
        ("oscillator", {  # T -> inf
            "grid": [1e1 * 10.0**k for k in range(8)],
            "point": lambda T: (PhysicalParams(T=T, h=0.01, m=1.0), spec),
        }),
        ("oscillator", {  # omega -> 0
            "grid": [0.01 * 0.5**k for k in range(8)],
            "point": lambda w: (
                PhysicalParams(T=1.0, h=1.0, m=1.0),
                OscillatorSpec([w]),
            ),
        }),
    ]
    ok = all(_limit_case(system, build) for system, build in cases)
    verdict(12, "quasiclassical_limits", ok)


def test_13_cli_determinism():
    args = [
        sys.executable, "-m", "qcthermo.cli",
        "gibbs", "--levels", "0,1,2", "--T", "1", "--seed", "3",
    ]
    first = subprocess.run(args, capture_output=True)
    second = subprocess.run(args, capture_output=True)
    ok = (
        first.returncode == 0
        and second.returncode == 0
        and first.stdout == second.stdout
    )
    verdict(13, "cli_determinism", ok)
