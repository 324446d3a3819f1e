"""Numerical minimal surfaces from holomorphic null data.

Turns Enneper–Weierstrass data into conformal minimal immersions of
planar domains into R^n, validates the defining identities (nullity,
periods, conformality, harmonicity, curvature), walks the associated
family, and minimizes discrete Dirichlet energy for fixed boundaries.
"""

__version__ = "1.0.0"

from ._kernels import BACKEND
from .catalog import CATALOG, get as catalog_get
from .domain import CircledDomain, Cycle, Hole, PathPolyline, annulus, disc, rectangle
from .expr import Expression, ParseError, parse
from .family import associate, associate_spec, conjugate, conjugate_spec
from .geometry import (
    gauss_curvature,
    gauss_map,
    jet,
    metric_coefficient,
    path_length,
    principal_curvatures,
    stereographic,
    total_curvature,
)
from .variational import area, dirichlet, minimize_dirichlet
from .weierstrass import (
    NullData,
    PeriodError,
    SurfaceReport,
    SurfaceSpec,
    evaluate_surface,
    flux,
    from_gdh,
    period,
    spinor,
    validate,
)

__all__ = [
    "__version__",
    "BACKEND",
    "CATALOG",
    "catalog_get",
    "CircledDomain",
    "Cycle",
    "Hole",
    "PathPolyline",
    "annulus",
    "disc",
    "rectangle",
    "Expression",
    "ParseError",
    "parse",
    "associate",
    "associate_spec",
    "conjugate",
    "conjugate_spec",
    "gauss_curvature",
    "gauss_map",
    "jet",
    "metric_coefficient",
    "path_length",
    "principal_curvatures",
    "stereographic",
    "total_curvature",
    "area",
    "dirichlet",
    "minimize_dirichlet",
    "NullData",
    "PeriodError",
    "SurfaceReport",
    "SurfaceSpec",
    "evaluate_surface",
    "flux",
    "from_gdh",
    "period",
    "spinor",
    "validate",
]
