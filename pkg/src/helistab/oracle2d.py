"""Finite-difference oracle for the full two-dimensional eigenproblem.

Discretizes

    -(p(y) c_y)_y - (rho^2 / p(y)) c_zz = lam w(y) c

on [-1, 1] x [0, rho] with c = 0 on the wire edges z = 0 and z = rho, and the
eigenvalue-carrying flux condition p(+-1) c_y = -+ lam c_b c on the wall edges
y = +-1.  The scheme is a conservative second-order finite-difference /
finite-volume hybrid: midpoint fluxes in y, central differences in z, and a
half-cell flux balance at the wall rows with the eigenvalue term moved to the
weight matrix.  Scaling each row by its cell measure makes the assembled pair
symmetric, so the same inverted-pencil solver as the one-dimensional path
applies.

This module referees the separated solver.  It is deliberately a different
discretization family (finite differences on the unreduced problem vs finite
elements on the reduced one) and never feeds the production classifier.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .eigen1d import EigenSolution, GeneralizedEigenSystem, SturmLiouvilleSpec, smallest_eigenvalue
from .errors import ParameterRangeError
from .geometry import FilmParams

__all__ = [
    "Grid2D",
    "grid2d",
    "assemble2d",
    "smallest_eigenvalue_2d",
    "embed_eigvec",
]


@dataclass(frozen=True)
class Grid2D:
    """Uniform tensor grid over the parameter rectangle [-1, 1] x [0, rho]."""

    ny: int
    nz: int
    dy: float
    dz: float
    y: np.ndarray
    z: np.ndarray
    values: np.ndarray | None = None


def grid2d(params: FilmParams, ny: int, nz: int) -> Grid2D:
    """Build the uniform grid used by :func:`assemble2d`."""
    if ny < 4 or nz < 4:
        raise ParameterRangeError(f"grid must be at least 4 x 4, got {ny} x {nz}")
    y = np.linspace(-1.0, 1.0, int(ny))
    z = np.linspace(0.0, params.rho, int(nz))
    return Grid2D(ny=int(ny), nz=int(nz), dy=float(y[1] - y[0]), dz=float(z[1] - z[0]), y=y, z=z)


def assemble2d(params: FilmParams, ny: int, nz: int) -> GeneralizedEigenSystem:
    """Assemble the symmetric two-dimensional pair on an ``ny`` x ``nz`` grid.

    Unknowns are the ``ny * (nz - 2)`` nodes with the Dirichlet rows at
    z = 0 and z = rho eliminated.  The flattened index of node (i, j) is
    ``i * (nz - 2) + (j - 1)``.  A is positive definite after elimination;
    B is diagonal, carrying the interior weight w(y) per cell plus the
    boundary weight c_b on the wall rows.
    """
    grid = grid2d(params, ny, nz)
    spec = SturmLiouvilleSpec.from_params(params, k=1)
    dy, dz = grid.dy, grid.dz
    rho_sq = params.rho * params.rho

    p_mid = np.asarray(spec.p_fn(grid.y[:-1] + 0.5 * dy))  # fluxes at y midpoints
    p_node = np.asarray(spec.p_fn(grid.y))
    w_node = np.asarray(spec.w_fn(grid.y))

    # Cell measure in y: half cells at the wall rows.
    m_y = np.full(grid.ny, dy)
    m_y[0] = m_y[-1] = 0.5 * dy

    nzi = grid.nz - 2  # interior z count
    n = grid.ny * nzi

    def idx(i: int | np.ndarray, jj: int | np.ndarray):
        return i * nzi + jj

    rows: list[np.ndarray] = []
    cols: list[np.ndarray] = []
    data: list[np.ndarray] = []

    jj = np.arange(nzi)

    # z couplings: coefficient (rho^2 / p_i) * m_i / dz per interface.
    cz = rho_sq / p_node * m_y / dz
    for i in range(grid.ny):
        base = idx(i, jj)
        rows.append(base)
        cols.append(base)
        data.append(np.full(nzi, 2.0 * cz[i]))
        rows.append(base[:-1])
        cols.append(base[1:])
        data.append(np.full(nzi - 1, -cz[i]))
        rows.append(base[1:])
        cols.append(base[:-1])
        data.append(np.full(nzi - 1, -cz[i]))

    # y couplings: midpoint flux coefficient p_{i+1/2} * dz / dy per interface.
    cy = p_mid * dz / dy
    for i in range(grid.ny - 1):
        lo = idx(i, jj)
        hi = idx(i + 1, jj)
        rows.append(lo)
        cols.append(lo)
        data.append(np.full(nzi, cy[i]))
        rows.append(hi)
        cols.append(hi)
        data.append(np.full(nzi, cy[i]))
        rows.append(lo)
        cols.append(hi)
        data.append(np.full(nzi, -cy[i]))
        rows.append(hi)
        cols.append(lo)
        data.append(np.full(nzi, -cy[i]))

    a_mat = sp.coo_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(n, n),
    ).tocsr()

    b_diag = np.empty(n)
    for i in range(grid.ny):
        b_diag[idx(i, jj)] = w_node[i] * m_y[i] * dz
    b_diag[idx(0, jj)] += spec.c_b * dz
    b_diag[idx(grid.ny - 1, jj)] += spec.c_b * dz
    b_mat = sp.diags(b_diag, format="csr")
    b_mat.eliminate_zeros()

    return GeneralizedEigenSystem(A=a_mat, B=b_mat, n=n, nodes=grid.y, k=None)


def smallest_eigenvalue_2d(
    system: GeneralizedEigenSystem,
    tol: float = 1e-8,
    seed: int | None = None,
) -> EigenSolution:
    """Smallest eigenvalue of the two-dimensional pair; same inversion strategy
    as the one-dimensional solver."""
    return smallest_eigenvalue(system, tol=tol, seed=seed)


def embed_eigvec(grid: Grid2D, eigvec: np.ndarray) -> np.ndarray:
    """Reshape an interior solution vector onto the full grid.

    Returns an (ny, nz) array with the Dirichlet columns z = 0 and z = rho
    restored as zeros.
    """
    nzi = grid.nz - 2
    vec = np.asarray(eigvec, dtype=float)
    if vec.size != grid.ny * nzi:
        raise ParameterRangeError(
            f"eigenvector length {vec.size} does not match grid interior "
            f"{grid.ny} x {nzi}"
        )
    full = np.zeros((grid.ny, grid.nz))
    full[:, 1:-1] = vec.reshape(grid.ny, nzi)
    return full
