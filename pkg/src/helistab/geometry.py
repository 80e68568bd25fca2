"""Closed-form geometry of a twisted film spanning a circular cylinder.

The film is the ruled surface swept by a diameter of the unit cylinder that
rotates by a total angle ``theta`` while advancing a dimensionless distance
``rho`` along the axis:

    (y, z) -> (-y sin(theta z / rho), y cos(theta z / rho), z)

with ruling coordinate y in [-1, 1] and axial coordinate z in [0, rho].
``theta = 0`` is the flat rectangular film.  The surface is minimal (zero mean
curvature) for every admissible parameter pair, which
:func:`mean_curvature_numeric` verifies by finite differences; the other
functions supply the closed-form coefficient fields consumed by the stability
solvers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterRangeError

__all__ = [
    "FilmParams",
    "Point3",
    "helicoid_point",
    "area_element",
    "gaussian_curvature",
    "tangent_z_sq",
    "mean_curvature_numeric",
]


@dataclass(frozen=True)
class FilmParams:
    """Aspect ratio ``rho`` (tube length over inner radius) and total twist ``theta``.

    Mirror symmetry of the surface lets ``theta`` be restricted to
    nonnegative values without loss of generality.
    """

    rho: float
    theta: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.rho) and self.rho > 0.0):
            raise ParameterRangeError(
                f"rho must be a positive finite number, got {self.rho!r}"
            )
        if not (math.isfinite(self.theta) and self.theta >= 0.0):
            raise ParameterRangeError(
                f"theta must be a nonnegative finite number, got {self.theta!r}"
            )


@dataclass(frozen=True)
class Point3:
    """A point in ambient Cartesian coordinates."""

    x: float
    y: float
    z: float


def helicoid_point(p: FilmParams, y: float, z: float) -> Point3:
    """Map surface coordinates (y, z) to the ambient point of the twisted film.

    Parameters
    ----------
    p : FilmParams
        Film parameters.
    y : float
        Ruling coordinate in [-1, 1]; y = +-1 lies on the cylinder wall.
    z : float
        Axial coordinate in [0, rho].

    Returns
    -------
    Point3
        ``(-y sin(theta z / rho), y cos(theta z / rho), z)``.
    """
    if not -1.0 <= y <= 1.0:
        raise ParameterRangeError(f"y must lie in [-1, 1], got {y!r}")
    if not 0.0 <= z <= p.rho:
        raise ParameterRangeError(f"z must lie in [0, rho] = [0, {p.rho}], got {z!r}")
    ang = p.theta * z / p.rho
    return Point3(-y * math.sin(ang), y * math.cos(ang), z)


def area_element(p: FilmParams, y):
    """sqrt(rho^2 + theta^2 y^2), the diffusion coefficient of the reduced problem.

    Accepts a scalar or an ndarray of ruling coordinates.
    """
    return np.sqrt(p.rho * p.rho + p.theta * p.theta * np.square(y))


def gaussian_curvature(p: FilmParams, y):
    """Gaussian curvature -rho^2 theta^2 / (rho^2 + theta^2 y^2)^2.

    Independent of the axial coordinate; identically zero for the flat film.
    Accepts a scalar or an ndarray.
    """
    s = p.rho * p.rho + p.theta * p.theta * np.square(y)
    return -((p.rho * p.theta) ** 2) / np.square(s)


def tangent_z_sq(p: FilmParams) -> float:
    """Squared axial component of the wall-curve tangent: rho^2 / (rho^2 + theta^2)."""
    return p.rho * p.rho / (p.rho * p.rho + p.theta * p.theta)


def _surface(p: FilmParams, y: float, z: float) -> np.ndarray:
    ang = p.theta * z / p.rho
    return np.array([-y * math.sin(ang), y * math.cos(ang), z])


def mean_curvature_numeric(p: FilmParams, y: float, z: float, h: float = 1e-4) -> float:
    """Second-order finite-difference estimate of the mean curvature at (y, z).

    First and second fundamental forms are built from central differences of
    the parameterization; the analytic value is zero everywhere, so this is a
    pure consistency probe.  The default step balances truncation against
    roundoff on unit-scale coordinates.

    Raises
    ------
    ParameterRangeError
        If the five-point stencil would leave the parameter rectangle.
    """
    if h <= 0.0:
        raise ParameterRangeError(f"step h must be positive, got {h!r}")
    if not (-1.0 <= y - h and y + h <= 1.0 and 0.0 <= z - h and z + h <= p.rho):
        raise ParameterRangeError(
            f"stencil of half-width {h} around (y={y}, z={z}) leaves "
            f"[-1, 1] x [0, {p.rho}]"
        )

    f = _surface
    f_y = (f(p, y + h, z) - f(p, y - h, z)) / (2.0 * h)
    f_z = (f(p, y, z + h) - f(p, y, z - h)) / (2.0 * h)
    f_yy = (f(p, y + h, z) - 2.0 * f(p, y, z) + f(p, y - h, z)) / (h * h)
    f_zz = (f(p, y, z + h) - 2.0 * f(p, y, z) + f(p, y, z - h)) / (h * h)
    f_yz = (
        f(p, y + h, z + h) - f(p, y + h, z - h) - f(p, y - h, z + h) + f(p, y - h, z - h)
    ) / (4.0 * h * h)

    normal = np.cross(f_y, f_z)
    normal /= np.linalg.norm(normal)

    e1 = f_y @ f_y
    f1 = f_y @ f_z
    g1 = f_z @ f_z
    ll = f_yy @ normal
    mm = f_yz @ normal
    nn = f_zz @ normal
    return float((e1 * nn - 2.0 * f1 * mm + g1 * ll) / (2.0 * (e1 * g1 - f1 * f1)))
