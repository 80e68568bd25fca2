"""Closed-form eigenvalues, fixed-point bounds, and explicit energy comparisons.

Everything here is discretization-free apart from quadrature of sampled
functions: the flat-film eigenvalue and its critical aspect ratio, the
constant-coefficient fixed-point eigenvalue and the two lower bounds built
from it, the sufficient stability inequality, the explicit trial function
whose Rayleigh quotient certifies instability, and the piecewise-flat bypass
surface showing the flat film is not a global minimizer beyond rho = pi/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .errors import DegenerateInputError, NumericalFailureError, ParameterRangeError
from .geometry import FilmParams

__all__ = [
    "ConstCoeffProblem",
    "SampledFunction",
    "flat_eigenvalue",
    "critical_rho",
    "const_coeff_eigenvalue",
    "lambda1_bound",
    "lambda2_bound",
    "sufficient_stable",
    "gbar",
    "sample",
    "rayleigh_quotient",
    "sufficient_unstable",
    "bypass_energy",
    "flat_film_energy",
    "min_fraction_bound",
]

_PI = math.pi


@dataclass(frozen=True)
class ConstCoeffProblem:
    """Coefficients of the constant-coefficient trace minimization.

    The quotient [int(A g'^2 + B g^2)] / [C (g(1)^2 + g(-1)^2) + int(D g^2)]
    over the interval [-1, 1] attains its infimum lam at the unique root of

        lam = (sqrt(A) / C) sqrt(B - lam D) tanh(sqrt((B - lam D) / A)),

    with B - lam D >= 0 at the root.
    """

    A: float
    B: float
    C: float
    D: float = 0.0

    def __post_init__(self) -> None:
        if not (self.A > 0.0 and self.B > 0.0 and self.C > 0.0):
            raise ParameterRangeError(
                f"A, B, C must be positive, got A={self.A!r} B={self.B!r} C={self.C!r}"
            )
        if self.D < 0.0:
            raise ParameterRangeError(f"D must be nonnegative, got {self.D!r}")


@dataclass(frozen=True)
class SampledFunction:
    """Nodal samples of a function on [-1, 1], endpoints included."""

    nodes: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        nodes = np.asarray(self.nodes, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)
        if nodes.ndim != 1 or nodes.size < 3:
            raise ParameterRangeError("need at least 3 sample nodes")
        if values.shape != nodes.shape:
            raise ParameterRangeError(
                f"values shape {values.shape} does not match nodes shape {nodes.shape}"
            )
        if np.any(np.diff(nodes) <= 0.0):
            raise ParameterRangeError("sample nodes must be strictly increasing")
        if abs(nodes[0] + 1.0) > 1e-12 or abs(nodes[-1] - 1.0) > 1e-12:
            raise ParameterRangeError("sample nodes must span [-1, 1] exactly")


def flat_eigenvalue(rho: float) -> float:
    """Smallest stability eigenvalue of the flat film: (pi/rho) tanh(pi/rho).

    Strictly decreasing in rho, tending to zero as rho grows.
    """
    if not (math.isfinite(rho) and rho > 0.0):
        raise ParameterRangeError(f"rho must be a positive finite number, got {rho!r}")
    u = _PI / rho
    return u * math.tanh(u)


def critical_rho() -> float:
    """Aspect ratio at which the flat film becomes marginally stable.

    Unique root of (pi/rho) tanh(pi/rho) = 1, found by bracketing root
    search on [1, 10]; approximately 2.6189.
    """
    return float(brentq(lambda r: flat_eigenvalue(r) - 1.0, 1.0, 10.0, xtol=1e-12))


def const_coeff_eigenvalue(prob: ConstCoeffProblem) -> float:
    """Solve the fixed-point equation of :class:`ConstCoeffProblem` for lam > 0.

    For D = 0 the right-hand side is constant and gives lam in closed form.
    For D > 0 the residual lam - rhs(lam) is strictly increasing on
    (0, B/D], negative at 0+ and positive at B/D, so bisection converges to
    the unique root; the bracket enforces B - lam D >= 0.
    """
    a, b, c, d = prob.A, prob.B, prob.C, prob.D

    def rhs(lam: float) -> float:
        mu_sq = (b - lam * d) / a
        mu = math.sqrt(mu_sq) if mu_sq > 0.0 else 0.0
        return (a / c) * mu * math.tanh(mu)

    if d == 0.0:
        return rhs(0.0)

    lo, hi = 0.0, b / d
    while hi - lo > 1e-14 * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if mid - rhs(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    lam = 0.5 * (lo + hi)
    if abs(lam - rhs(lam)) > 1e-9:
        raise NumericalFailureError(
            f"fixed-point residual {abs(lam - rhs(lam)):.3e} after bisection "
            f"on ({prob!r}); bracket [{lo!r}, {hi!r}]"
        )
    return lam


def lambda1_bound(p: FilmParams) -> float:
    """First closed-form lower-bound eigenvalue: the root of

    lam = sqrt((pi^2 - 2 lam theta^2) / rho^2) tanh sqrt((pi^2 - 2 lam theta^2) / rho^2).
    """
    rho_sq = p.rho * p.rho
    return const_coeff_eigenvalue(
        ConstCoeffProblem(A=rho_sq, B=_PI * _PI, C=rho_sq, D=2.0 * p.theta * p.theta)
    )


def lambda2_bound(p: FilmParams) -> float:
    """Second lower-bound eigenvalue; never below :func:`lambda1_bound`.

    Same fixed-point family with the interior coefficients inflated by
    sqrt(rho^2 + theta^2) / rho.
    """
    rho_sq = p.rho * p.rho
    scale = math.sqrt(rho_sq + p.theta * p.theta) / p.rho
    return const_coeff_eigenvalue(
        ConstCoeffProblem(
            A=rho_sq,
            B=_PI * _PI * scale,
            C=rho_sq,
            D=2.0 * p.theta * p.theta * scale,
        )
    )


def sufficient_stable(p: FilmParams) -> bool:
    """Closed-form sufficient condition for stability.

    True iff pi^2 - 2 theta^2 > 0 and s tanh(s) > 1 with
    s = sqrt((pi^2 - 2 theta^2) / rho^2).  One-directional: False is not a
    verdict of instability.
    """
    arg = _PI * _PI - 2.0 * p.theta * p.theta
    if arg <= 0.0:
        return False
    s = math.sqrt(arg) / p.rho
    return s * math.tanh(s) > 1.0


def gbar(p: FilmParams, variant: str = "corrected") -> Callable:
    """Explicit trial function for the instability test, as a vectorized callable.

    The ``corrected`` variant is

        y -> cosh(pi y / sqrt(rho^2 + theta^2 y^2)) * rho / sqrt(rho^2 + theta^2 y^2),

    which reduces to the exact flat-film minimizer cosh(pi y / rho) at
    theta = 0.  The ``as-printed`` variant keeps the cosh argument constant
    in y (pi / sqrt(rho^2 + theta^2 y^2)); it does not reduce to the flat
    minimizer and is retained only for auditability.  Normalization is
    omitted: every consumer is scale-invariant.
    """
    rho_sq = p.rho * p.rho
    theta_sq = p.theta * p.theta
    rho = p.rho

    if variant == "corrected":

        def fn(y):
            s = np.sqrt(rho_sq + theta_sq * np.square(y))
            return np.cosh(_PI * y / s) * rho / s

    elif variant == "as-printed":

        def fn(y):
            s = np.sqrt(rho_sq + theta_sq * np.square(y))
            return np.cosh(_PI / s) * rho / s

    else:
        raise ParameterRangeError(
            f"variant must be 'corrected' or 'as-printed', got {variant!r}"
        )
    return fn


def sample(fn: Callable, n: int = 2001) -> SampledFunction:
    """Sample a callable on ``n`` uniform nodes spanning [-1, 1]."""
    if n < 3:
        raise ParameterRangeError(f"node count must be >= 3, got {n!r}")
    nodes = np.linspace(-1.0, 1.0, int(n))
    return SampledFunction(nodes=nodes, values=np.asarray(fn(nodes), dtype=float))


def rayleigh_quotient(g: SampledFunction, p: FilmParams) -> float:
    """Rayleigh quotient of a sampled function for the k = 1 mode.

    numerator   = int(sqrt(rho^2 + theta^2 y^2) g'^2
                      + pi^2 / sqrt(rho^2 + theta^2 y^2) g^2) dy
    denominator = rho^2 / sqrt(rho^2 + theta^2) (g(1)^2 + g(-1)^2)
                  + int(2 rho^2 theta^2 / (rho^2 + theta^2 y^2)^(3/2) g^2) dy

    The sampled function is treated as piecewise linear and integrated with
    the same element quadrature as the eigenvalue solver, so the result is an
    exact upper bound for the solver's smallest eigenvalue on the same node
    set.  Scale-invariant in g.
    """
    # Local import: this module stays import-light unless the quotient is used.
    from ._assembly import pair_forms
    from .eigen1d import SturmLiouvilleSpec

    spec = SturmLiouvilleSpec.from_params(p, k=1)
    num, den = pair_forms(g.nodes, g.values, spec.p_fn, spec.q_fn, spec.w_fn, spec.c_b)
    if den <= 0.0 or not math.isfinite(den):
        raise DegenerateInputError(
            "quotient denominator vanishes: boundary traces and interior weight "
            "see no mass (g is zero where the weights live)"
        )
    return num / den


def sufficient_unstable(p: FilmParams, nodes: int = 2001) -> bool:
    """Trial-function instability test: Rayleigh quotient of ``gbar`` below 1.

    One-directional: False is not a verdict of stability.
    """
    return rayleigh_quotient(sample(gbar(p, "corrected"), nodes), p) < 1.0


def bypass_energy(phi: float, rho: float, variant: str = "corrected") -> float:
    """Free energy of the piecewise-flat bypass surface at cut angle ``phi``.

    The competitor surface replaces the flat film with a chord rectangle at
    distance sin(phi) from the axis plus two flat caps in the end planes.
    The ``corrected`` variant counts the rectangle at its full width
    2 cos(phi), giving 2 rho cos(phi) + 2 phi; the ``as-printed`` variant is
    rho cos(phi) + 2 phi.  Compare against the flat film energy 2 rho: a
    value below it for some phi in (0, pi/2) shows the flat film is not a
    global minimizer, which happens exactly for rho > pi/2 in the corrected
    bookkeeping.
    """
    if not 0.0 < phi < 0.5 * _PI:
        raise ParameterRangeError(f"phi must lie in (0, pi/2), got {phi!r}")
    if not (math.isfinite(rho) and rho > 0.0):
        raise ParameterRangeError(f"rho must be a positive finite number, got {rho!r}")
    if variant == "corrected":
        return 2.0 * rho * math.cos(phi) + 2.0 * phi
    if variant == "as-printed":
        return rho * math.cos(phi) + 2.0 * phi
    raise ParameterRangeError(
        f"variant must be 'corrected' or 'as-printed', got {variant!r}"
    )


def flat_film_energy(rho: float) -> float:
    """Energy of the flat film spanning the tube: area 2 rho."""
    if not (math.isfinite(rho) and rho > 0.0):
        raise ParameterRangeError(f"rho must be a positive finite number, got {rho!r}")
    return 2.0 * rho


def min_fraction_bound(
    a: float,
    b: float,
    alpha: float,
    beta: float,
    c_lo: float,
    c_up: float,
    c: float,
) -> bool:
    """Mediant-style bound used as a property-test target; always true.

    Checks (a + alpha c)/(b + beta c) >= min over the bracket endpoints
    {c_lo, c_up} of the same fraction, for 0 <= c_lo <= c <= c_up.  A tiny
    relative slack absorbs rounding when all three fractions coincide.
    """
    if not (a > 0.0 and b > 0.0 and alpha > 0.0 and beta > 0.0):
        raise ParameterRangeError("a, b, alpha, beta must all be positive")
    if not 0.0 <= c_lo <= c <= c_up:
        raise ParameterRangeError(
            f"need 0 <= c_lo <= c <= c_up, got c_lo={c_lo!r} c={c!r} c_up={c_up!r}"
        )

    def frac(t: float) -> float:
        return (a + alpha * t) / (b + beta * t)

    lhs = frac(c)
    rhs = min(frac(c_lo), frac(c_up))
    return lhs >= rhs - 1e-12 * (abs(lhs) + abs(rhs))
