"""Weierstrass data and the identities it must satisfy.

Convention used throughout the package: the stored holomorphic data is
``f = 2 dX/dz``, so the immersion is ``X = c + Re integral(f)``, the
complex periods are the contour integrals of f, their real parts must
vanish for X to be single valued, and their imaginary parts are the flux.
One integrand therefore serves periods, flux, surfaces, and null curves
alike.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import expr as ex
from .domain import CircledDomain, Cycle, PathPolyline
from .quadrature import integrate_polyline

__all__ = [
    "NullData",
    "SurfaceSpec",
    "SurfaceReport",
    "PeriodError",
    "from_gdh",
    "spinor",
    "integrate_path",
    "period",
    "real_period",
    "flux",
    "evaluate_surface",
    "evaluate_null_curve",
    "validate",
    "DEFAULT_TOL",
    "PERIOD_FLAG_FACTOR",
]

DEFAULT_TOL = 1e-10
# a period counts as "vanishing" below 100*tol: genuine periods are O(1),
# quadrature noise is O(tol)
PERIOD_FLAG_FACTOR = 100.0
DEFAULT_SAMPLES = 4096


class PeriodError(Exception):
    """A period that must vanish does not."""

    def __init__(self, message: str, cycle_index: int | None = None):
        super().__init__(message)
        self.cycle_index = cycle_index


@dataclass(frozen=True)
class NullData:
    """n-tuple of holomorphic expressions with values in the null quadric."""

    components: tuple[ex.Expression, ...]
    provenance: str = "user"

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) < 3:
            raise ValueError("null data needs dimension n >= 3")

    @property
    def n(self) -> int:
        return len(self.components)

    def eval_all(self, z) -> np.ndarray:
        """Stack of component values, shape (n,) + shape(z)."""
        return np.stack([c.evaluate(np.asarray(z, dtype=np.complex128)) for c in self.components])

    def nullity_residual(self, z) -> float:
        """max |sum f_j^2| / sum |f_j|^2 over the given points."""
        vals = self.eval_all(z)
        num = np.abs(np.sum(vals * vals, axis=0))
        den = np.sum(np.abs(vals) ** 2, axis=0)
        if np.any(den == 0):
            raise ValueError("data vanishes at a sample point")
        return float(np.max(num / den))

    def scaled(self, factor: complex) -> "NullData":
        comps = tuple(
            ex.combine(ex.mul, ex.const(factor), c) for c in self.components
        )
        return NullData(comps, provenance=self.provenance)


def from_gdh(g: ex.Expression, dh: ex.Expression) -> NullData:
    """Assemble 3-dimensional data from a Gauss map g and height differential.

    f = (1/2 (1/g - g), i/2 (1/g + g), 1) * dh, which satisfies the nullity
    identity algebraically.  Pole collisions between g and dh surface later
    during validation, not here.
    """
    one = ex.const(1)
    ginv = ex.combine(ex.div, one, g)
    half = ex.const(0.5)
    ihalf = ex.const(0.5j)
    f1 = ex.combine(ex.mul, ex.combine(ex.mul, half, ex.combine(ex.sub, ginv, g)), dh)
    f2 = ex.combine(ex.mul, ex.combine(ex.mul, ihalf, ex.combine(ex.add, ginv, g)), dh)
    f3 = dh
    return NullData((f1, f2, f3), provenance="gdh")


def spinor(z, w) -> np.ndarray:
    """Two-sheeted quadratic parameterization of the null quadric in C^3.

    (z, w) -> (z^2 - w^2, i(z^2 + w^2), 2 z w); the component squares sum
    to zero identically.
    """
    z = np.asarray(z, dtype=np.complex128)
    w = np.asarray(w, dtype=np.complex128)
    z2, w2 = z * z, w * w
    return np.stack([z2 - w2, 1j * (z2 + w2), 2.0 * z * w])


@dataclass(frozen=True)
class SurfaceSpec:
    """Weierstrass data on a domain with a basepoint and offset."""

    data: NullData
    domain: CircledDomain
    basepoint: complex
    offset: np.ndarray | None = None
    name: str = ""
    tol: float = DEFAULT_TOL
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        off = self.offset
        if off is None:
            off = np.zeros(self.data.n)
        off = np.asarray(off, dtype=float)
        if off.shape != (self.data.n,):
            raise ValueError(f"offset must have {self.data.n} components")
        object.__setattr__(self, "offset", off)
        if not self.domain.contains(self.basepoint):
            raise ValueError(f"basepoint {self.basepoint} is not in the domain")

    def basis_periods(self) -> np.ndarray:
        """Complex periods over the homology basis, shape (#cycles, n); cached."""
        if "periods" not in self._cache:
            cycles = self.domain.homology_basis()
            self._cache["periods"] = np.array(
                [period(self.data, c, self.tol) for c in cycles]
            ).reshape(len(cycles), self.data.n)
        return self._cache["periods"]

    def require_real_periods_vanish(self) -> None:
        periods = self.basis_periods()
        for k, p in enumerate(periods):
            bad = float(np.max(np.abs(p.real), initial=0.0))
            if bad > PERIOD_FLAG_FACTOR * self.tol:
                raise PeriodError(
                    f"real period {bad:.3e} on basis cycle {k}: surface is not single-valued",
                    cycle_index=k,
                )

    def require_all_periods_vanish(self) -> None:
        periods = self.basis_periods()
        for k, p in enumerate(periods):
            bad = float(np.max(np.abs(p), initial=0.0))
            if bad > PERIOD_FLAG_FACTOR * self.tol:
                raise PeriodError(
                    f"complex period {bad:.3e} on basis cycle {k}: no single-valued null curve",
                    cycle_index=k,
                )


@dataclass
class SurfaceReport:
    """Validation bundle for a surface spec."""

    nullity_residual: float
    holomorphy_residual: float
    periods: np.ndarray  # (#cycles, n) complex
    min_data_norm: float
    tol: float
    sample_count: int

    @property
    def real_periods(self) -> np.ndarray:
        return self.periods.real

    @property
    def flux_vectors(self) -> np.ndarray:
        return self.periods.imag

    @property
    def real_periods_vanish(self) -> bool:
        return bool(
            np.max(np.abs(self.real_periods), initial=0.0) <= PERIOD_FLAG_FACTOR * self.tol
        )

    @property
    def all_periods_vanish(self) -> bool:
        return bool(
            np.max(np.abs(self.periods), initial=0.0) <= PERIOD_FLAG_FACTOR * self.tol
        )

    def passes(self, nullity_tol: float | None = None) -> bool:
        limit = 1e-9 if nullity_tol is None else nullity_tol
        return self.nullity_residual <= limit and self.real_periods_vanish


# ---------------------------------------------------------------------------
# Contour integrals


def _vector_integrand(data: NullData):
    def f(zs: np.ndarray) -> np.ndarray:
        return data.eval_all(zs)

    return f


def integrate_path(data: NullData, path: PathPolyline, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Integral of f along the path, error <= tol per component."""
    return integrate_polyline(_vector_integrand(data), path.vertices, tol)


def period(data: NullData, cycle: Cycle, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Contour integral of f around the closed cycle."""
    return integrate_polyline(_vector_integrand(data), cycle.vertices, tol)


def real_period(data: NullData, cycle: Cycle, tol: float = DEFAULT_TOL) -> np.ndarray:
    return period(data, cycle, tol).real


def flux(data: NullData, cycle: Cycle, tol: float = DEFAULT_TOL) -> np.ndarray:
    return period(data, cycle, tol).imag


# ---------------------------------------------------------------------------
# Evaluation


def evaluate_surface(spec: SurfaceSpec, z: complex, tol: float | None = None) -> np.ndarray:
    """X(z) = c + Re integral of f from the basepoint, along a routed path.

    Rejected up front when the real periods on the homology basis do not
    vanish (the value would depend on the route).
    """
    tol = spec.tol if tol is None else tol
    spec.require_real_periods_vanish()
    path = spec.domain.connect(spec.basepoint, z)
    return spec.offset + integrate_path(spec.data, path, tol).real


def evaluate_null_curve(
    spec: SurfaceSpec, z: complex, tol: float | None = None, offset=None
) -> np.ndarray:
    """Z(z) = c + integral of f from the basepoint; Re Z matches the surface.

    Requires all complex periods to vanish on the homology basis (trivially
    true on a simply connected domain).
    """
    tol = spec.tol if tol is None else tol
    spec.require_all_periods_vanish()
    c = np.asarray(spec.offset, dtype=np.complex128) if offset is None else np.asarray(offset, dtype=np.complex128)
    path = spec.domain.connect(spec.basepoint, z)
    return c + integrate_path(spec.data, path, tol)


# ---------------------------------------------------------------------------
# Validation


def _holomorphy_residual(data: NullData, zs: np.ndarray, dom: CircledDomain) -> float:
    """Max finite-difference Cauchy-Riemann defect, normalized by 1 + |f|.

    The step shrinks near holes/punctures (the only candidate
    singularities of catalog data) to keep the truncation term h^2 f'''/6
    well below the reporting scale.
    """
    diam = dom.diameter
    dist = np.full(zs.shape, np.inf)
    for h in dom.holes:
        dist = np.minimum(dist, np.abs(zs - h.center) - h.radius)
    steps = np.minimum(1e-5 * diam, 1e-4 * np.maximum(dist, 0.0) ** 1.5)
    steps = np.maximum(steps, 1e-7)
    worst = 0.0
    for c in data.components:
        vals = c.evaluate(zs)
        dx = (c.evaluate(zs + steps) - c.evaluate(zs - steps)) / (2.0 * steps)
        dy = (c.evaluate(zs + 1j * steps) - c.evaluate(zs - 1j * steps)) / (2.0 * steps)
        defect = 0.5 * (dx + 1j * dy)
        worst = max(worst, float(np.max(np.abs(defect) / (1.0 + np.abs(vals)))))
    return worst


def validate(
    spec: SurfaceSpec,
    samples: int = DEFAULT_SAMPLES,
    tol: float | None = None,
    seed: int | None = None,
) -> SurfaceReport:
    """Residuals over quasi-random domain points plus all basis periods."""
    tol = spec.tol if tol is None else tol
    zs = spec.domain.sample(samples, seed=seed)
    vals = spec.data.eval_all(zs)
    sq = np.abs(np.sum(vals * vals, axis=0))
    norms = np.sum(np.abs(vals) ** 2, axis=0)
    nullity = float(np.max(sq / norms))
    min_norm = float(math.sqrt(np.min(norms)))
    holo = _holomorphy_residual(spec.data, zs, spec.domain)
    cycles = spec.domain.homology_basis()
    periods = np.array([period(spec.data, c, tol) for c in cycles]).reshape(
        len(cycles), spec.data.n
    )
    return SurfaceReport(
        nullity_residual=nullity,
        holomorphy_residual=holo,
        periods=periods,
        min_data_norm=min_norm,
        tol=tol,
        sample_count=samples,
    )
