"""Piecewise-linear element assembly shared by the quotient and solver paths.

The sampled Rayleigh quotient and the eigenvalue solver must see *identical*
discrete forms: the quotient of any sampled function is then an upper bound
for the computed smallest eigenvalue on the same node set by the minimax
principle, with no quadrature mismatch to blur the inequality.  Coefficient
integrals use two-point Gauss quadrature per element, which is exact for the
polynomial factors of hat-function products.
"""

from __future__ import annotations

from typing import Callable

import numpy as np
import scipy.sparse as sp

_GAUSS_OFFSET = 0.5 / np.sqrt(3.0)


def assemble_pair(
    nodes: np.ndarray,
    p_fn: Callable,
    q_fn: Callable,
    w_fn: Callable,
    c_b: float,
) -> tuple[sp.csr_matrix, sp.csr_matrix]:
    """Assemble the symmetric pair (A, B) of -(p g')' + q g = lam (w g + traces).

    A[i, j] = int p phi_i' phi_j' + q phi_i phi_j dy
    B[i, j] = int w phi_i phi_j dy, plus c_b on the two boundary diagonal entries.

    ``nodes`` may be any strictly increasing vector with at least three
    entries; elements need not be uniform.  Coefficient callables must accept
    ndarrays.
    """
    nodes = np.asarray(nodes, dtype=float)
    if nodes.ndim != 1 or nodes.size < 3:
        raise ValueError("mesh must be one-dimensional with at least 3 nodes")
    h = np.diff(nodes)
    if np.any(h <= 0.0):
        raise ValueError("mesh nodes must be strictly increasing")

    mid = nodes[:-1] + 0.5 * h
    xg = np.stack([mid - _GAUSS_OFFSET * h, mid + _GAUSS_OFFSET * h])  # (2, m-1)
    wq = 0.5 * h

    pv = p_fn(xg)
    qv = q_fn(xg)
    wv = w_fn(xg)
    phi_l = (nodes[1:] - xg) / h
    phi_r = (xg - nodes[:-1]) / h

    stiff = np.sum(wq * pv, axis=0) / (h * h)

    def local_mass(cv):
        ll = np.sum(wq * cv * phi_l * phi_l, axis=0)
        lr = np.sum(wq * cv * phi_l * phi_r, axis=0)
        rr = np.sum(wq * cv * phi_r * phi_r, axis=0)
        return ll, lr, rr

    qll, qlr, qrr = local_mass(qv)
    wll, wlr, wrr = local_mass(wv)

    m = nodes.size
    il = np.arange(m - 1)
    ir = il + 1
    rows = np.concatenate([il, il, ir, ir])
    cols = np.concatenate([il, ir, il, ir])

    a_data = np.concatenate([stiff + qll, -stiff + qlr, -stiff + qlr, stiff + qrr])
    a_mat = sp.coo_matrix((a_data, (rows, cols)), shape=(m, m)).tocsr()

    b_rows = np.concatenate([rows, [0, m - 1]])
    b_cols = np.concatenate([cols, [0, m - 1]])
    b_data = np.concatenate([wll, wlr, wlr, wrr, [c_b, c_b]])
    b_mat = sp.coo_matrix((b_data, (b_rows, b_cols)), shape=(m, m)).tocsr()
    b_mat.eliminate_zeros()
    return a_mat, b_mat


def pair_forms(
    nodes: np.ndarray,
    values: np.ndarray,
    p_fn: Callable,
    q_fn: Callable,
    w_fn: Callable,
    c_b: float,
) -> tuple[float, float]:
    """Energy and weight quadratic forms of a nodal vector under the same assembly."""
    a_mat, b_mat = assemble_pair(nodes, p_fn, q_fn, w_fn, c_b)
    v = np.asarray(values, dtype=float)
    return float(v @ (a_mat @ v)), float(v @ (b_mat @ v))
