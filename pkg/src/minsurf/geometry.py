"""Differential-geometric diagnostics of evaluated surfaces.

Finite-difference jets over the surface evaluation give conformality,
harmonicity, Laplacian orthogonality, and the mean curvature vector;
the holomorphic data gives the metric, Gauss maps, and curvature in
closed form.  The two routes are kept independent so they can
cross-check each other.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .domain import CircledDomain, Disc, PathPolyline, Rectangle
from .quadrature import integrate_segment
from .weierstrass import NullData, SurfaceSpec, evaluate_surface

__all__ = [
    "Jet2",
    "StencilError",
    "NonConformalError",
    "jet",
    "jet_from_fn",
    "conformality_residual",
    "harmonicity_residual",
    "laplacian_orthogonality",
    "mean_curvature_vector",
    "unit_normal",
    "gauss_map",
    "generalized_gauss_map",
    "stereographic",
    "metric_coefficient",
    "curvature_density",
    "gauss_curvature",
    "principal_curvatures",
    "total_curvature",
    "path_length",
    "JET_STEP_FACTOR",
    "CURVATURE_STEP_FACTOR",
]

JET_STEP_FACTOR = 1e-4  # default jet step, times domain diameter
CURVATURE_STEP_FACTOR = 1e-3  # coarser step for curvature oracles
GAUSS_INF = complex(math.inf, 0.0)


class StencilError(Exception):
    """Finite-difference stencil leaves the domain."""


class NonConformalError(Exception):
    """A formula valid only for conformal jets was applied to one that isn't."""


@dataclass(frozen=True)
class Jet2:
    """Second-order jet of a surface at one parameter point."""

    z: complex
    h: float
    X: np.ndarray
    X_u: np.ndarray
    X_v: np.ndarray
    X_uu: np.ndarray
    X_uv: np.ndarray
    X_vv: np.ndarray


_STENCIL = (1, -1, 1j, -1j, 1 + 1j, 1 - 1j, -1 + 1j, -1 - 1j)


def _assemble_jet(z, h, X0, nb) -> Jet2:
    xp, xm, yp, ym, pp, pm, mp_, mm = nb
    return Jet2(
        z=z,
        h=h,
        X=X0,
        X_u=(xp - xm) / (2 * h),
        X_v=(yp - ym) / (2 * h),
        X_uu=(xp + xm - 2 * X0) / h**2,
        X_vv=(yp + ym - 2 * X0) / h**2,
        X_uv=(pp - pm - mp_ + mm) / (4 * h**2),
    )


def jet(spec: SurfaceSpec, z: complex, h: float | None = None) -> Jet2:
    """Central-difference jet of the surface at z, O(h^2) truncation.

    Neighbor values share the routed center integral plus short straight
    segments, so the path error cancels exactly in all differences.
    """
    if h is None:
        h = JET_STEP_FACTOR * spec.domain.diameter
        # data derivatives blow up like powers of the distance to a hole or
        # puncture; shrink the step quadratically to keep truncation flat
        for hole in spec.domain.holes:
            d = abs(z - hole.center) - hole.radius
            h = min(h, 5e-4 * d * d)
        h = max(h, 1e-9 * spec.domain.diameter)
    pts = [z + off * h for off in _STENCIL]
    for p in pts:
        if not spec.domain.contains(p, margin=0.0):
            raise StencilError(f"stencil point {p} leaves the domain (h={h})")
    X0 = evaluate_surface(spec, z)

    def short(b: complex) -> np.ndarray:
        return X0 + integrate_segment(spec.data.eval_all, z, b, 1e-13).real

    return _assemble_jet(z, h, X0, [short(p) for p in pts])


def jet_from_fn(fn, z: complex, h: float) -> Jet2:
    """Jet of an arbitrary closed-form map (u, v) -> R^n, given as fn(z)."""
    X0 = np.asarray(fn(z), dtype=float)
    return _assemble_jet(z, h, X0, [np.asarray(fn(z + off * h), dtype=float) for off in _STENCIL])


# ---------------------------------------------------------------------------
# Jet diagnostics


def conformality_residual(j: Jet2) -> float:
    """max(| |X_u| - |X_v| |, |X_u . X_v| / (|X_u| |X_v|)); 0 iff conformal."""
    nu = float(np.linalg.norm(j.X_u))
    nv = float(np.linalg.norm(j.X_v))
    if nu == 0 or nv == 0:
        raise NonConformalError(f"rank-0 point at z={j.z} (branch point suspect)")
    return max(abs(nu - nv), abs(float(j.X_u @ j.X_v)) / (nu * nv))


def harmonicity_residual(j: Jet2) -> float:
    """|Delta X| = |X_uu + X_vv|."""
    return float(np.linalg.norm(j.X_uu + j.X_vv))


def laplacian_orthogonality(j: Jet2, cancellation_tol: float = 1e-4) -> tuple[float, float]:
    """(Delta X . X_u, Delta X . X_v), normalized by |grad X| |Delta X|.

    Defined as (0, 0) when Delta X vanishes.  Under finite differences
    "vanishes" means: the computed Delta X is a cancellation residue, tiny
    against the second derivatives it is built from; without that floor
    the normalization would divide noise by its own magnitude.
    """
    lap = j.X_uu + j.X_vv
    nl = float(np.linalg.norm(lap))
    scale = float(np.linalg.norm(j.X_uu)) + float(np.linalg.norm(j.X_vv))
    if nl == 0 or nl <= cancellation_tol * scale:
        return (0.0, 0.0)
    grad = math.sqrt(float(j.X_u @ j.X_u) + float(j.X_v @ j.X_v))
    return (float(lap @ j.X_u) / (grad * nl), float(lap @ j.X_v) / (grad * nl))


def mean_curvature_vector(j: Jet2, conformality_tol: float = 1e-4) -> np.ndarray:
    """H = 2 Delta X / |grad X|^2; only valid on conformal jets."""
    scale = max(float(np.linalg.norm(j.X_u)), float(np.linalg.norm(j.X_v)))
    if conformality_residual(j) > conformality_tol * max(scale, 1.0):
        raise NonConformalError(
            f"jet at z={j.z} is not conformal; mean curvature formula invalid"
        )
    grad2 = float(j.X_u @ j.X_u) + float(j.X_v @ j.X_v)
    return 2.0 * (j.X_uu + j.X_vv) / grad2


def unit_normal(j: Jet2) -> np.ndarray:
    """X_u x X_v / |X_u x X_v| (surfaces in R^3 only)."""
    if j.X.shape != (3,):
        raise ValueError("unit normal is defined for n = 3 only")
    nvec = np.cross(j.X_u, j.X_v)
    norm = float(np.linalg.norm(nvec))
    if norm == 0:
        raise NonConformalError(f"rank-0 point at z={j.z}")
    return nvec / norm


# ---------------------------------------------------------------------------
# Gauss maps


def gauss_map(data: NullData, z: complex) -> complex:
    """f3 / (f1 - i f2) in C union {inf} (n = 3)."""
    if data.n != 3:
        raise ValueError("the complex Gauss map is defined for n = 3 only")
    f1, f2, f3 = (c.evaluate(z) for c in data.components)
    if f1 == 0 and f2 == 0 and f3 == 0:
        raise ValueError(f"data vanishes at z={z}")
    den = f1 - 1j * f2
    if den == 0:
        return GAUSS_INF
    return f3 / den


def generalized_gauss_map(data: NullData, z) -> np.ndarray:
    """Projective point [f1 : ... : fn], normalized to unit norm.

    The representative is scaled so its largest-modulus coordinate is real
    positive, making the value deterministic.
    """
    vals = data.eval_all(z)
    norms = np.linalg.norm(vals, axis=0)
    if np.any(norms == 0):
        raise ValueError("data vanishes at a requested point")
    k = np.argmax(np.abs(vals), axis=0)
    lead = np.take_along_axis(vals, np.expand_dims(k, 0), axis=0)[0]
    phase = lead / np.abs(lead)
    return vals / (norms * phase)


def stereographic(g: complex) -> np.ndarray:
    """Inverse stereographic projection from (0, 0, 1): C union {inf} -> S^2."""
    if cmath.isinf(g):
        return np.array([0.0, 0.0, 1.0])
    m2 = abs(g) ** 2
    return np.array([2.0 * g.real, 2.0 * g.imag, m2 - 1.0]) / (m2 + 1.0)


# ---------------------------------------------------------------------------
# Metric and curvature from the data


def metric_coefficient(data: NullData, z):
    """lambda with induced metric lambda |dz|^2; equals |X_u|^2 pointwise."""
    vals = data.eval_all(z)
    lam = 0.5 * np.sum(np.abs(vals) ** 2, axis=0)
    if np.any(lam == 0):
        raise ValueError("metric degenerates: data vanishes at a requested point")
    return lam if np.ndim(z) else float(lam)


def curvature_density(data: NullData, z):
    """Spherical pullback density s with K * lambda = -s  (n = 3).

    Written homogeneously in (a, b) = (f3, f1 - i f2), so points where the
    Gauss map passes through infinity need no special casing.
    """
    if data.n != 3:
        raise ValueError("Gauss-map curvature is defined for n = 3 only")
    f1, f2, f3 = data.components
    zz = np.asarray(z, dtype=np.complex128)
    a = f3.evaluate(zz)
    b = f1.evaluate(zz) - 1j * f2.evaluate(zz)
    da = f3.derivative.evaluate(zz)
    db = f1.derivative.evaluate(zz) - 1j * f2.derivative.evaluate(zz)
    wronski = da * b - a * db
    dens = 4.0 * np.abs(wronski) ** 2 / (np.abs(a) ** 2 + np.abs(b) ** 2) ** 2
    return dens if np.ndim(z) else float(dens)


def gauss_curvature(data: NullData, z):
    """K = -(4 |g'|^2 / (1 + |g|^2)^2) / lambda  (n = 3, nonpositive)."""
    return -curvature_density(data, z) / metric_coefficient(data, z)


def principal_curvatures(data: NullData, z: complex, ktol: float = 1e-8) -> tuple[float, float]:
    """(sqrt(-K), -sqrt(-K)) for validated minimal data in R^3."""
    K = gauss_curvature(data, z)
    if K > ktol:
        raise ValueError(f"positive Gauss curvature {K} at z={z}: data is not minimal")
    k1 = math.sqrt(max(-K, 0.0))
    return (k1, -k1)


# ---------------------------------------------------------------------------
# Integral quantities


def _curvature_grid(dom: CircledDomain, resolution: int):
    """Midpoint-rule nodes and weights adapted to the domain shape.

    Discs use polar nodes, a single concentric hole switches the radial
    variable to log r (integrands concentrate near the hole), rectangles
    use Cartesian nodes; anything else gets a masked Cartesian grid over
    the bounding box.
    """
    concentric = (
        isinstance(dom.outer, Disc)
        and len(dom.holes) == 1
        and dom.holes[0].center == dom.outer.center
    )
    if isinstance(dom.outer, Disc) and not dom.holes:
        c, R = dom.outer.center, dom.outer.radius
        nr = ntheta = resolution
        r = (np.arange(nr) + 0.5) * R / nr
        th = (np.arange(ntheta) + 0.5) * 2 * np.pi / ntheta
        rr, tt = np.meshgrid(r, th, indexing="ij")
        zs = c + rr * np.exp(1j * tt)
        w = rr * (R / nr) * (2 * np.pi / ntheta)
        return zs.ravel(), w.ravel()
    if concentric:
        c = dom.outer.center
        s0, s1 = math.log(dom.holes[0].radius), math.log(dom.outer.radius)
        ns = ntheta = resolution
        s = s0 + (np.arange(ns) + 0.5) * (s1 - s0) / ns
        th = (np.arange(ntheta) + 0.5) * 2 * np.pi / ntheta
        ss, tt = np.meshgrid(s, th, indexing="ij")
        rr = np.exp(ss)
        zs = c + rr * np.exp(1j * tt)
        w = rr**2 * ((s1 - s0) / ns) * (2 * np.pi / ntheta)
        return zs.ravel(), w.ravel()
    if isinstance(dom.outer, Rectangle) and not dom.holes:
        lo, hi = dom.outer.corner_min, dom.outer.corner_max
        nx = ny = resolution
        x = lo.real + (np.arange(nx) + 0.5) * (hi.real - lo.real) / nx
        y = lo.imag + (np.arange(ny) + 0.5) * (hi.imag - lo.imag) / ny
        xx, yy = np.meshgrid(x, y, indexing="ij")
        zs = xx + 1j * yy
        w = np.full(zs.shape, (hi.real - lo.real) / nx * (hi.imag - lo.imag) / ny)
        return zs.ravel(), w.ravel()
    xmin, xmax, ymin, ymax = dom.bounding_box()
    nx = ny = resolution
    x = xmin + (np.arange(nx) + 0.5) * (xmax - xmin) / nx
    y = ymin + (np.arange(ny) + 0.5) * (ymax - ymin) / ny
    xx, yy = np.meshgrid(x, y, indexing="ij")
    zs = (xx + 1j * yy).ravel()
    mask = np.array([dom.contains(zv, margin=0.0) for zv in zs])
    w = np.full(zs.shape, (xmax - xmin) / nx * (ymax - ymin) / ny)
    return zs[mask], w[mask]


def total_curvature(spec: SurfaceSpec, resolution: int = 256) -> float:
    """integral of K dA over the domain, by midpoint quadrature plus one
    Richardson extrapolation step; always <= 0."""

    def estimate(res: int) -> float:
        zs, w = _curvature_grid(spec.domain, res)
        return -float(np.sum(curvature_density(spec.data, zs) * w))

    coarse = estimate(resolution)
    fine = estimate(2 * resolution)
    return (4.0 * fine - coarse) / 3.0


def path_length(spec: SurfaceSpec, path: PathPolyline, tol: float = 1e-10) -> float:
    """Length of the path in the pullback metric: integral of sqrt(lambda).

    Completeness probes follow divergent paths, so only the metric's own
    singularities (holes and punctures) are off limits; the path may leave
    the clipped outer boundary of the domain model.
    """
    for v in path.vertices:
        for h in spec.domain.holes:
            if abs(v - h.center) <= h.radius + spec.domain.margin:
                raise ValueError(f"path vertex {v} is inside a hole or puncture margin")

    def integrand(zs: np.ndarray) -> np.ndarray:
        return np.sqrt(metric_coefficient(spec.data, zs))

    total = 0.0
    segs = path.segments
    path_len = sum(abs(b - a) for a, b in segs)
    if path_len == 0:
        return 0.0
    for a, b in segs:
        if a == b:
            continue
        total += abs(integrate_segment(integrand, a, b, tol * abs(b - a) / path_len))
    return float(total)
