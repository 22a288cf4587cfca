"""Gaussian lattice sums for the quantum box spectrum.

The one-dimensional quantum statistical sum of a box is

    Z_q(mu) = sum_{n>=1} exp(-(pi/4) n^2 mu^2),

summed directly for large mu and through its Poisson-transformed dual

    Z_q = -1/2 + 1/mu + (2/mu) sum_{n>=1} exp(-(n pi)^2 lam),
    lam = 4/(pi mu^2),

for small mu.  Both series decay like exp(-pi n^2) at mu = 2/sqrt(pi), which
is where the dispatcher switches representation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import ConvergenceError, ValidationError

__all__ = [
    "ThetaValue",
    "CROSSOVER_MU",
    "theta_direct",
    "theta_poisson",
    "theta",
    "energy_sum",
    "energy_sum_direct",
    "w_pair",
    "theta_lambda_derivative",
    "SlopeWitnesses",
    "small_mu_slope_witnesses",
]

# Balanced-decay point: both representations lose exp(-pi) per term here.
CROSSOVER_MU = 2.0 / math.sqrt(math.pi)

MAX_TERMS = 10**6
DEFAULT_TOL = 1e-16


@dataclass(frozen=True)
class ThetaValue:
    value: float
    representation_used: str  # direct | poisson
    terms_used: int
    truncation_bound: float

    def __float__(self) -> float:
        return self.value


def _sum_gaussian(decay: float, weight=None, tol: float = DEFAULT_TOL):
    """sum_{n>=1} w(n)*exp(-decay*n^2); returns (sum, terms, tail bound).

    Stops once the next term falls below tol * partial sum.  The tail is
    bounded by a geometric series with ratio exp(-decay*(2n+3)).
    """
    total = 0.0
    n = 0
    while n < MAX_TERMS:
        n += 1
        term = math.exp(-decay * n * n)
        if weight is not None:
            term *= weight(n)
        total += term
        nxt = math.exp(-decay * (n + 1) * (n + 1))
        if weight is not None:
            nxt *= weight(n + 1)
        if nxt < tol * total or nxt == 0.0:
            ratio = math.exp(-decay * (2 * n + 3))
            bound = nxt / (1.0 - ratio) if ratio < 1.0 else math.inf
            return total, n, bound
    raise ConvergenceError(f"Gaussian sum did not converge in {MAX_TERMS} terms")


def theta_direct(mu: float, tol: float = DEFAULT_TOL) -> ThetaValue:
    """Direct sum sum_{n>=1} exp(-(pi/4) n^2 mu^2)."""
    if not (mu > 0):
        raise ValidationError(f"mu must be positive, got {mu}")
    if not (tol > 0):
        raise ValidationError(f"tol must be positive, got {tol}")
    if mu < 1e-4:
        raise ConvergenceError(
            f"mu={mu} too small for the direct representation; use theta_poisson"
        )
    decay = (math.pi / 4.0) * mu * mu
    total, terms, bound = _sum_gaussian(decay, tol=tol)
    return ThetaValue(total, "direct", terms, bound)


def theta_poisson(mu: float, tol: float = DEFAULT_TOL) -> ThetaValue:
    """Poisson-transformed sum -1/2 + 1/mu + (2/mu) sum exp(-(n pi)^2 lam)."""
    if not (mu > 0):
        raise ValidationError(f"mu must be positive, got {mu}")
    lam = 4.0 / (math.pi * mu * mu)
    tail, terms, bound = _sum_gaussian(math.pi * math.pi * lam, tol=tol)
    value = -0.5 + 1.0 / mu + (2.0 / mu) * tail
    return ThetaValue(value, "poisson", terms, (2.0 / mu) * bound)


def theta(mu: float, tol: float = DEFAULT_TOL) -> ThetaValue:
    """Dispatch to the representation with the faster-decaying series."""
    if not (mu > 0):
        raise ValidationError(f"mu must be positive, got {mu}")
    if mu >= CROSSOVER_MU:
        return theta_direct(mu, tol)
    return theta_poisson(mu, tol)


def energy_sum_direct(mu: float, tol: float = DEFAULT_TOL) -> float:
    """sum_{n>=1} (n^2/lam) exp(-n^2/lam) with lam = 4/(pi mu^2)."""
    if not (mu > 0):
        raise ValidationError(f"mu must be positive, got {mu}")
    decay = (math.pi / 4.0) * mu * mu  # = 1/lam
    total, _, _ = _sum_gaussian(decay, weight=lambda n: decay * n * n, tol=tol)
    return total

def energy_sum(mu: float, tol: float = DEFAULT_TOL) -> float:
    """Energy-weighted lattice sum; mean energy is T*energy_sum(mu)/theta(mu).

    Equal to lam * d(theta)/d(lam).  Below the crossover it is evaluated in
    the transformed representation as sqrt(pi*lam)/4 * W1.
    """
    if not (mu > 0):
        raise ValidationError(f"mu must be positive, got {mu}")
    if mu >= CROSSOVER_MU:
        return energy_sum_direct(mu, tol)
    lam = 4.0 / (math.pi * mu * mu)
    _, w1 = w_pair(lam, tol)
    return 0.25 * math.sqrt(math.pi * lam) * w1


def w_pair(lam: float, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Auxiliary sums (W0, W1) of the transformed representation.

    W0 = 1 - (lam*pi)^(-1/2) + 2*sum exp(-(n pi)^2 lam)
    W1 = 1 + 2*sum exp(-(n pi)^2 lam) - 4*lam*sum (n pi)^2 exp(-(n pi)^2 lam)

    Z_q = sqrt(lam*pi)/2 * W0 and d(Z_q)/d(lam) = sqrt(pi/lam)/4 * W1.
    """
    if not (lam > 0):
        raise ValidationError(f"lam must be positive, got {lam}")
    decay = math.pi * math.pi * lam
    tail0, _, _ = _sum_gaussian(decay, tol=tol)
    tail2, _, _ = _sum_gaussian(
        decay, weight=lambda n: (n * math.pi) ** 2, tol=tol
    )
    w0 = 1.0 - 1.0 / math.sqrt(lam * math.pi) + 2.0 * tail0
    w1 = 1.0 + 2.0 * tail0 - 4.0 * lam * tail2
    return w0, w1


def theta_lambda_derivative(lam: float, tol: float = DEFAULT_TOL) -> float:
    """d(theta)/d(lam) = sum n^2/lam^2 exp(-n^2/lam), summed directly."""
    if not (lam > 0):
        raise ValidationError(f"lam must be positive, got {lam}")
    total, _, _ = _sum_gaussian(
        1.0 / lam, weight=lambda n: n * n / (lam * lam), tol=tol
    )
    return total


def _adaptive_simpson(f, a, b, tol):
    fa, fb = f(a), f(b)
    mid = 0.5 * (a + b)
    fm = f(mid)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        if depth <= 0 or abs(left + right - whole) <= 15.0 * tol:
            return left + right + (left + right - whole) / 15.0
        return recurse(a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + recurse(
            m, b, fm, frm, fb, right, tol / 2.0, depth - 1
        )

    return recurse(a, b, fa, fm, fb, whole, tol, 50)


@dataclass(frozen=True)
class SlopeWitnesses:
    """Numerical witnesses of the small-mu monotonicity bound.

    slope_bound is the upper bound on d/dmu of the statistical-sum ratio at
    the small-mu regime boundary; the comparison integral_to_one >
    integrand_at_one justifies replacing the lattice sum by an integral.
    """

    slope_bound: float
    integral_to_one: float
    integrand_at_one: float


def small_mu_slope_witnesses() -> SlopeWitnesses:
    """Recompute the bound -1/2 + 2*pi^4*sum n^2 exp(-n^2 pi^3) and its
    integral-comparison witnesses; the bound must be negative."""
    eta = math.pi**-3
    tail, _, _ = _sum_gaussian(math.pi**3, weight=lambda n: n * n)
    slope_bound = -0.5 + 2.0 * math.pi**4 * tail
    integral = _adaptive_simpson(
        lambda x: x * x * math.exp(-x * x / eta), 0.0, 1.0, 1e-12
    )
    return SlopeWitnesses(
        slope_bound=slope_bound,
        integral_to_one=integral,
        integrand_at_one=math.exp(-1.0 / eta),
    )
