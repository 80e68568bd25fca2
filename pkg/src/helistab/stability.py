"""Stability verdicts, region maps, and the traced marginal-stability curve.

A film at parameters (rho, theta) is classified by combining, in order:

1. the closed-form sufficient stability inequality (decides Stable only);
2. the trial-function Rayleigh quotient below 1 (decides Unstable only);
3. the numeric smallest eigenvalue lam_hat with a marginality band:
   lam_hat > 1 + tol is Stable, lam_hat < 1 - tol is Unstable, and anything
   inside the band is Inconclusive.

The map over a parameter grid and the traced level set lam_hat = 1 reproduce
the stability-region picture: a stable region at small rho and twist, an
unstable region beyond, and a marginal curve falling from the twist axis to
the flat-film critical ratio near rho = 2.62 on the rho axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import analytic
from .eigen1d import lambda_hat
from .errors import NumericalFailureError, ParameterRangeError
from .geometry import FilmParams

__all__ = [
    "Status",
    "Method",
    "ClassifyConfig",
    "StabilityVerdict",
    "RegionCell",
    "RegionMap",
    "CurveSample",
    "BoundaryCurve",
    "ValidationPoint",
    "PointCheck",
    "ValidationReport",
    "classify",
    "region_map",
    "trace_boundary",
    "validate",
]


class Status(str, Enum):
    STABLE = "Stable"
    UNSTABLE = "Unstable"
    INCONCLUSIVE = "Inconclusive"


class Method(str, Enum):
    ANALYTIC_SUFFICIENT = "AnalyticSufficient"
    ANALYTIC_TEST_FUNCTION = "AnalyticTestFunction"
    NUMERIC = "Numeric"


@dataclass(frozen=True)
class ClassifyConfig:
    """Tolerances and resolutions of the classifier.

    ``tol`` is the marginality half-band on lam_hat - 1; the closed-form
    conditions are strict inequalities, so exact marginality must map to
    Inconclusive.  ``method`` selects which routes run: with ``both`` the
    numeric path runs even when an analytic bound already decides, so the
    verdict records every quantity and soundness can be audited.
    """

    nodes: int = 2001
    tol: float = 1e-6
    k_check: int = 4
    method: str = "both"

    def __post_init__(self) -> None:
        if self.nodes < 3:
            raise ParameterRangeError(f"nodes must be >= 3, got {self.nodes!r}")
        if self.tol <= 0.0:
            raise ParameterRangeError(f"tol must be positive, got {self.tol!r}")
        if self.method not in ("analytic", "numeric", "both"):
            raise ParameterRangeError(
                f"method must be 'analytic', 'numeric' or 'both', got {self.method!r}"
            )


@dataclass(frozen=True)
class StabilityVerdict:
    """Classification of one parameter pair with the quantities that produced it.

    ``margin`` is the distance of the deciding quantity from 1.  ``method``
    is ``None`` only for an analytic-only run in which neither one-sided
    test fired.
    """

    status: Status
    method: Method | None
    lambda_hat: float | None
    lambda_bar: float | None
    lambda1: float | None
    margin: float


def classify(p: FilmParams, cfg: ClassifyConfig | None = None) -> StabilityVerdict:
    """Classify the film at ``p`` per the route order documented on the module."""
    cfg = cfg or ClassifyConfig()
    run_analytic = cfg.method in ("analytic", "both")
    run_numeric = cfg.method in ("numeric", "both")

    suff_stable = False
    lam_bar = None
    lam1 = None
    if run_analytic:
        suff_stable = analytic.sufficient_stable(p)
        lam1 = analytic.lambda1_bound(p)
        lam_bar = analytic.rayleigh_quotient(
            analytic.sample(analytic.gbar(p, "corrected"), cfg.nodes), p
        )

    lam_hat = None
    if run_numeric:
        lam_hat = lambda_hat(p, n=cfg.nodes, k_check=cfg.k_check).lam

    if suff_stable:
        s = math.sqrt(math.pi * math.pi - 2.0 * p.theta * p.theta) / p.rho
        deciding = s * math.tanh(s)
        return StabilityVerdict(
            status=Status.STABLE,
            method=Method.ANALYTIC_SUFFICIENT,
            lambda_hat=lam_hat,
            lambda_bar=lam_bar,
            lambda1=lam1,
            margin=abs(deciding - 1.0),
        )
    if lam_bar is not None and lam_bar < 1.0:
        return StabilityVerdict(
            status=Status.UNSTABLE,
            method=Method.ANALYTIC_TEST_FUNCTION,
            lambda_hat=lam_hat,
            lambda_bar=lam_bar,
            lambda1=lam1,
            margin=abs(lam_bar - 1.0),
        )
    if lam_hat is not None:
        if lam_hat > 1.0 + cfg.tol:
            status = Status.STABLE
        elif lam_hat < 1.0 - cfg.tol:
            status = Status.UNSTABLE
        else:
            status = Status.INCONCLUSIVE
        return StabilityVerdict(
            status=status,
            method=Method.NUMERIC,
            lambda_hat=lam_hat,
            lambda_bar=lam_bar,
            lambda1=lam1,
            margin=abs(lam_hat - 1.0),
        )
    # Analytic-only run with neither one-sided test conclusive.
    return StabilityVerdict(
        status=Status.INCONCLUSIVE,
        method=None,
        lambda_hat=None,
        lambda_bar=lam_bar,
        lambda1=lam1,
        margin=abs(lam_bar - 1.0) if lam_bar is not None else math.inf,
    )


@dataclass(frozen=True)
class RegionCell:
    """One grid point of a region map; ``error`` records a per-cell failure."""

    rho: float
    theta: float
    verdict: StabilityVerdict | None
    error: str | None = None


@dataclass(frozen=True)
class RegionMap:
    """Verdicts over a rectangular grid, rho-major order."""

    rho_axis: np.ndarray
    theta_axis: np.ndarray
    cells: list[RegionCell] = field(default_factory=list)


def region_map(
    rho_min: float,
    rho_max: float,
    theta_min: float,
    theta_max: float,
    rho_steps: int,
    theta_steps: int,
    cfg: ClassifyConfig | None = None,
) -> RegionMap:
    """Classify every point of the grid; per-cell failures are recorded, not fatal.

    Cells are evaluated independently, so the output does not depend on
    evaluation order; rows are emitted rho-major for determinism.
    """
    if rho_steps < 2 or theta_steps < 2:
        raise ParameterRangeError("rho_steps and theta_steps must both be >= 2")
    if not (rho_max > rho_min > 0.0):
        raise ParameterRangeError("need 0 < rho_min < rho_max")
    if not (theta_max > theta_min >= 0.0):
        raise ParameterRangeError("need 0 <= theta_min < theta_max")
    cfg = cfg or ClassifyConfig()
    rho_axis = np.linspace(rho_min, rho_max, rho_steps)
    theta_axis = np.linspace(theta_min, theta_max, theta_steps)
    cells = []
    for rho in rho_axis:
        for theta in theta_axis:
            try:
                verdict = classify(FilmParams(float(rho), float(theta)), cfg)
                cells.append(RegionCell(float(rho), float(theta), verdict))
            except NumericalFailureError as exc:
                cells.append(RegionCell(float(rho), float(theta), None, error=str(exc)))
    return RegionMap(rho_axis=rho_axis, theta_axis=theta_axis, cells=cells)


@dataclass(frozen=True)
class CurveSample:
    """One traced point of the marginal curve; ``rho_star`` is None when the
    marginal eigenvalue never crosses 1 inside the search window."""

    theta: float
    rho_star: float | None
    residual: float | None


@dataclass(frozen=True)
class BoundaryCurve:
    """Traced level set lam_hat = 1 with a monotonicity report.

    ``monotone_nonincreasing`` reports whether the found crossings decrease
    with theta; it is informational only, since nothing guarantees the stable
    and unstable regions are separated by a monotone curve.
    """

    samples: list[CurveSample]
    monotone_nonincreasing: bool | None


# Very short tubes are re-stabilized by the wire clamping: at fixed twist the
# smallest eigenvalue rises above 1 again once rho shrinks enough (e.g. near
# rho = 0.9 for theta = 2.9), and it keeps growing as rho -> 0+.  The marginal
# level set therefore climbs along the twist axis instead of terminating on
# it.  The tracer follows the descending branch of the diagram and searches a
# fixed window in rho, reporting "no crossing" when the film is already
# unstable at the window's lower edge; the short-tube sliver below that edge
# is deliberately out of scope.
_RHO_WINDOW_LO = 1.0
_RHO_WINDOW_HI = 4.0
_RHO_LIMIT = 64.0


def trace_boundary(
    theta_min: float,
    theta_max: float,
    steps: int,
    cfg: ClassifyConfig | None = None,
    rho_window: tuple[float, float] = (_RHO_WINDOW_LO, _RHO_WINDOW_HI),
) -> BoundaryCurve:
    """Trace rho_star(theta) with lam_hat(rho_star, theta) = 1 by bisection.

    For each theta the bracket starts at ``rho_window`` and the upper edge
    doubles (up to a hard limit) while the film is still stable there; the
    lower edge is fixed.  No sign change means no crossing for that theta and
    the sample records ``rho_star = None``.  Found crossings satisfy
    |lam_hat - 1| well below 1e-4.
    """
    if steps < 1:
        raise ParameterRangeError(f"steps must be >= 1, got {steps!r}")
    if not (theta_max >= theta_min >= 0.0):
        raise ParameterRangeError("need 0 <= theta_min <= theta_max")
    cfg = cfg or ClassifyConfig()

    def margin_fn(rho: float, theta: float) -> float:
        return lambda_hat(FilmParams(rho, theta), n=cfg.nodes, k_check=1).lam - 1.0

    thetas = np.linspace(theta_min, theta_max, steps) if steps > 1 else np.array([theta_min])
    samples = []
    for theta in thetas:
        theta = float(theta)
        lo, hi = rho_window
        f_lo = margin_fn(lo, theta)
        if f_lo <= 0.0:
            samples.append(CurveSample(theta, None, None))
            continue
        f_hi = margin_fn(hi, theta)
        while f_hi > 0.0 and hi < _RHO_LIMIT:
            hi = min(2.0 * hi, _RHO_LIMIT)
            f_hi = margin_fn(hi, theta)
        if f_hi > 0.0:
            samples.append(CurveSample(theta, None, None))
            continue
        while hi - lo > 1e-6 * max(1.0, hi):
            mid = 0.5 * (lo + hi)
            if margin_fn(mid, theta) > 0.0:
                lo = mid
            else:
                hi = mid
        rho_star = 0.5 * (lo + hi)
        samples.append(CurveSample(theta, rho_star, abs(margin_fn(rho_star, theta))))

    found = [s.rho_star for s in samples if s.rho_star is not None]
    monotone = None
    if len(found) >= 2:
        monotone = all(b <= a + 1e-6 for a, b in zip(found, found[1:]))
    return BoundaryCurve(samples=samples, monotone_nonincreasing=monotone)


@dataclass(frozen=True)
class ValidationPoint:
    """One externally supplied marginal observation with its error box."""

    rho: float
    theta: float
    err_rho: float
    err_theta: float
    source: str

    def __post_init__(self) -> None:
        if self.rho <= 0.0:
            raise ParameterRangeError(f"rho must be positive, got {self.rho!r}")
        if self.err_rho < 0.0 or self.err_theta < 0.0:
            raise ParameterRangeError("error half-widths must be nonnegative")


@dataclass(frozen=True)
class PointCheck:
    """Marginality check of one point: ``consistent`` is True when the error
    box intersects the band |lam_hat - 1| <= band."""

    point: ValidationPoint
    lambda_hat: float
    min_abs_dev: float
    consistent: bool


@dataclass(frozen=True)
class ValidationReport:
    checks: list[PointCheck]

    @property
    def n_pass(self) -> int:
        return sum(1 for c in self.checks if c.consistent)

    @property
    def n_fail(self) -> int:
        return len(self.checks) - self.n_pass


def validate(
    points: list[ValidationPoint],
    cfg: ClassifyConfig | None = None,
    band: float = 0.05,
) -> ValidationReport:
    """Check marginality of external data points against the numeric eigenvalue.

    The error box of each point is sampled on the 3 x 3 grid of its center,
    edges and corners (clipped to admissible parameters).  The box is deemed
    to intersect the marginal band when the sampled deviation lam_hat - 1
    either enters [-band, band] or changes sign across the box, the latter
    because a sign change forces a crossing of the level set inside the box.
    An empty input yields an empty report.
    """
    cfg = cfg or ClassifyConfig()
    if band <= 0.0:
        raise ParameterRangeError(f"band must be positive, got {band!r}")
    checks = []
    for pt in points:
        rhos = sorted({max(pt.rho - pt.err_rho, 1e-3), pt.rho, pt.rho + pt.err_rho})
        thetas = sorted({max(pt.theta - pt.err_theta, 0.0), pt.theta, pt.theta + pt.err_theta})
        devs = []
        center = None
        for rho in rhos:
            for theta in thetas:
                lam = lambda_hat(FilmParams(rho, theta), n=cfg.nodes, k_check=1).lam
                devs.append(lam - 1.0)
                if rho == pt.rho and theta == pt.theta:
                    center = lam
        assert center is not None
        min_abs = min(abs(d) for d in devs)
        crosses = min(devs) < 0.0 < max(devs)
        checks.append(
            PointCheck(
                point=pt,
                lambda_hat=center,
                min_abs_dev=min_abs,
                consistent=bool(min_abs <= band or crosses),
            )
        )
    return ValidationReport(checks=checks)
