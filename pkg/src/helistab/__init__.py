"""Linear stability of helical soap films confined to a circular cylinder.

The film spanning two straight wires at the ends of a cylindrical tube takes
the shape of a helicoid; whether it is a stable equilibrium depends on the
tube aspect ratio rho and the total twist theta between the wires.  This
package evaluates the closed-form stability and instability bounds, solves
the reduced one-dimensional eigenproblem (with the eigenvalue appearing in
the boundary conditions) numerically, referees that solver against a
two-dimensional finite-difference oracle, and maps verdicts over the
(rho, theta) plane including the traced marginal-stability curve.
"""

from .analytic import (
    ConstCoeffProblem,
    SampledFunction,
    bypass_energy,
    const_coeff_eigenvalue,
    critical_rho,
    flat_eigenvalue,
    flat_film_energy,
    gbar,
    lambda1_bound,
    lambda2_bound,
    min_fraction_bound,
    rayleigh_quotient,
    sample,
    sufficient_stable,
    sufficient_unstable,
)
from .eigen1d import (
    EigenSolution,
    GeneralizedEigenSystem,
    SturmLiouvilleSpec,
    assemble,
    k_sweep,
    lambda_hat,
    smallest_eigenvalue,
)
from .errors import (
    DegenerateInputError,
    HelistabError,
    IngestionError,
    InternalConsistencyError,
    NumericalFailureError,
    ParameterRangeError,
)
from .geometry import (
    FilmParams,
    Point3,
    area_element,
    gaussian_curvature,
    helicoid_point,
    mean_curvature_numeric,
    tangent_z_sq,
)
from .oracle2d import Grid2D, assemble2d, embed_eigvec, grid2d, smallest_eigenvalue_2d
from .stability import (
    BoundaryCurve,
    ClassifyConfig,
    Method,
    RegionMap,
    StabilityVerdict,
    Status,
    ValidationPoint,
    ValidationReport,
    classify,
    region_map,
    trace_boundary,
    validate,
)

__version__ = "0.1.0"
