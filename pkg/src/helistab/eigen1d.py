"""Discrete solver for the reduced one-dimensional stability eigenproblem.

Separating the axial dependence of film perturbations into the sine modes
sin(k pi z / rho) leaves, for each mode number k, a Sturm-Liouville problem on
the ruling coordinate:

    -(p(y) g')' + q(y) g = lam w(y) g        on [-1, 1],
    p(+1) g'(+1) = +lam c_b g(+1),
    p(-1) g'(-1) = -lam c_b g(-1),

with coefficients

    p(y) = sqrt(rho^2 + theta^2 y^2),
    q(y) = k^2 pi^2 / p(y),
    w(y) = 2 rho^2 theta^2 / p(y)^3,
    c_b  = rho^2 / sqrt(rho^2 + theta^2).

The eigenvalue multiplies both the interior weight and the boundary traces,
so a piecewise-linear Galerkin discretization yields the symmetric
generalized pair

    A g = lam B g,

where A (stiffness plus potential) is positive definite and B (interior
weight mass plus the two boundary weights) is positive semidefinite, of rank
2 when theta = 0.  The smallest eigenvalue is recovered as 1 / mu_max of the
inverted pencil B v = mu A v, which keeps the definite matrix on the side
that gets factorized and maps the lam = +infinity modes of a singular B
harmlessly to mu = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.linalg
import scipy.sparse as sp
from scipy.sparse.linalg import ArpackNoConvergence, eigsh, splu

from ._assembly import assemble_pair
from .errors import (
    DegenerateInputError,
    InternalConsistencyError,
    NumericalFailureError,
    ParameterRangeError,
)
from .geometry import FilmParams

__all__ = [
    "SturmLiouvilleSpec",
    "GeneralizedEigenSystem",
    "EigenSolution",
    "assemble",
    "smallest_eigenvalue",
    "lambda_hat",
    "k_sweep",
]

_PI_SQ = math.pi * math.pi

# Below this size a dense LAPACK solve is cheaper and more robust than ARPACK.
_DENSE_CUTOFF = 400

_MAXITER = 10_000


@dataclass(frozen=True)
class SturmLiouvilleSpec:
    """Coefficient bundle of the reduced eigenproblem for one axial mode.

    ``p_fn``, ``q_fn`` and ``w_fn`` are vectorized callables of the ruling
    coordinate; ``c_b`` is the eigenvalue weight carried by each boundary
    trace.  ``c_b`` always equals ``p(+-1) * rho^2 / (rho^2 + theta^2)``,
    the flux form of the wall condition.
    """

    p_fn: Callable
    q_fn: Callable
    w_fn: Callable
    c_b: float
    k: int

    @classmethod
    def from_params(cls, params: FilmParams, k: int = 1) -> "SturmLiouvilleSpec":
        if k < 1:
            raise ParameterRangeError(f"mode number k must be >= 1, got {k!r}")
        rho_sq = params.rho * params.rho
        theta_sq = params.theta * params.theta
        k_sq = float(k * k)

        def p_fn(y):
            return np.sqrt(rho_sq + theta_sq * np.square(y))

        def q_fn(y):
            return k_sq * _PI_SQ / np.sqrt(rho_sq + theta_sq * np.square(y))

        def w_fn(y):
            s = rho_sq + theta_sq * np.square(y)
            return 2.0 * rho_sq * theta_sq / (s * np.sqrt(s))

        c_b = rho_sq / math.sqrt(rho_sq + theta_sq)
        return cls(p_fn=p_fn, q_fn=q_fn, w_fn=w_fn, c_b=c_b, k=k)


@dataclass(frozen=True)
class GeneralizedEigenSystem:
    """Symmetric discrete pair A g = lam B g.

    ``nodes`` is the grid of the ruling coordinate.  For two-dimensional
    assemblies (see :mod:`helistab.oracle2d`) the unknown count ``n`` exceeds
    ``nodes.size`` and ``k`` is ``None``.
    """

    A: sp.csr_matrix
    B: sp.csr_matrix
    n: int
    nodes: np.ndarray
    k: int | None = None


@dataclass(frozen=True)
class EigenSolution:
    """Smallest generalized eigenvalue with its eigenvector and residual."""

    lam: float
    eigvec: np.ndarray
    residual: float
    k: int | None


def assemble(params: FilmParams, k: int = 1, n: int = 2001) -> GeneralizedEigenSystem:
    """Assemble the discrete pair on a uniform grid of ``n`` nodes.

    A carries int(p g'^2 + q g^2); B carries int(w g^2) plus ``c_b`` at the
    two endpoint degrees of freedom.  Coefficients are integrated with
    two-point Gauss quadrature per element.
    """
    if n < 3:
        raise ParameterRangeError(f"node count must be >= 3, got {n!r}")
    spec = SturmLiouvilleSpec.from_params(params, k)
    nodes = np.linspace(-1.0, 1.0, int(n))
    a_mat, b_mat = assemble_pair(nodes, spec.p_fn, spec.q_fn, spec.w_fn, spec.c_b)
    return GeneralizedEigenSystem(A=a_mat, B=b_mat, n=int(n), nodes=nodes, k=k)


def smallest_eigenvalue(
    system: GeneralizedEigenSystem,
    tol: float = 1e-10,
    seed: int | None = None,
) -> EigenSolution:
    """Smallest eigenvalue of A g = lam B g via the inverted pencil.

    The largest eigenvalue mu of B v = mu A v is computed with Lanczos
    iteration on the A-inverse-applied operator (ARPACK, banded/sparse LU of
    A internally); small systems fall back to a dense LAPACK solve.  The
    reported eigenvalue is the Rayleigh quotient of the converged vector over
    the assembled pair, so it is an upper bound for the exact discrete
    minimum regardless of iteration error.

    Parameters
    ----------
    system : GeneralizedEigenSystem
        Assembled pair.
    tol : float
        Relative residual target for the iterative path.
    seed : int, optional
        Seed for the start vector; ``None`` uses a fixed deterministic start.
    """
    n = system.n
    if n <= _DENSE_CUTOFF:
        mu_all, vecs = scipy.linalg.eigh(system.B.toarray(), system.A.toarray())
        mu = float(mu_all[-1])
        v = vecs[:, -1]
    else:
        if seed is None:
            v0 = np.full(n, 1.0 / math.sqrt(n))
        else:
            v0 = np.random.default_rng(seed).standard_normal(n)
        try:
            mu_vals, mu_vecs = eigsh(
                system.B,
                k=2,
                M=system.A,
                which="LA",
                tol=tol,
                maxiter=_MAXITER,
                ncv=min(n - 1, 48),
                v0=v0,
            )
        except ArpackNoConvergence as exc:
            raise NumericalFailureError(
                f"Lanczos iteration did not converge within {_MAXITER} iterations "
                f"(n={n}, tol={tol}); converged eigenvalues: {exc.eigenvalues!r}"
            ) from exc
        top = int(np.argmax(mu_vals))
        mu = float(mu_vals[top])
        v = mu_vecs[:, top]

    if mu <= 0.0:
        raise DegenerateInputError(
            "eigenvalue weight matrix vanishes on the computed subspace "
            f"(mu_max={mu!r}); the pair has no positive finite eigenvalue"
        )

    v = v / np.linalg.norm(v)
    av = system.A @ v
    bv = system.B @ v
    lam = float(v @ av) / float(v @ bv)
    residual = float(np.linalg.norm(av - lam * bv) / np.linalg.norm(av))
    if residual > 1e-6:
        raise NumericalFailureError(
            f"eigenpair residual {residual:.3e} exceeds 1e-6 "
            f"(n={n}, lam={lam!r}, mu={mu!r})"
        )
    return EigenSolution(lam=lam, eigvec=v, residual=residual, k=system.k)


def k_sweep(
    params: FilmParams,
    n: int = 2001,
    kmax: int = 4,
    tol: float = 1e-10,
) -> list[EigenSolution]:
    """Smallest eigenvalue per axial mode k = 1 .. kmax."""
    if kmax < 1:
        raise ParameterRangeError(f"kmax must be >= 1, got {kmax!r}")
    return [smallest_eigenvalue(assemble(params, k=k, n=n), tol=tol) for k in range(1, kmax + 1)]


def lambda_hat(
    params: FilmParams,
    n: int = 2001,
    k_check: int = 1,
    tol: float = 1e-10,
) -> EigenSolution:
    """Smallest eigenvalue over all axial modes, which occurs at k = 1.

    With ``k_check > 1`` the modes k = 2 .. k_check are solved as well and
    the sequence lam(k) is required to be nondecreasing; a violation beyond
    discretization tolerance signals an assembly or solver bug.
    """
    sols = k_sweep(params, n=n, kmax=max(1, k_check), tol=tol)
    for prev, cur in zip(sols, sols[1:]):
        slack = 1e-8 * max(1.0, abs(prev.lam))
        if cur.lam < prev.lam - slack:
            raise InternalConsistencyError(
                f"eigenvalue decreased with mode number: lam(k={prev.k})={prev.lam!r} "
                f"-> lam(k={cur.k})={cur.lam!r} at (rho={params.rho}, theta={params.theta})"
            )
    return sols[0]
