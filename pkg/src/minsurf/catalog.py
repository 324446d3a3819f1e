"""Built-in surfaces with their natural domains.

Two catenoid entries exist on purpose: `catenoid` integrates the classical
(u, v) parameterization (cos u cosh v, sin u cosh v, v) directly, while
`catenoid-ew` carries the g = z, dh = -2 dz/z data on an annulus model of
the punctured plane.  The two surfaces differ by a translation and a
factor-2 homothety, so they are kept distinct and never compared
pointwise.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import expr as ex
from .domain import CircledDomain, annulus, disc, rectangle
from .weierstrass import NullData, SurfaceSpec, from_gdh

__all__ = ["CatalogEntry", "CATALOG", "names", "get", "build_catenoid_ew", "build_helicoid_disc"]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    spec: SurfaceSpec


def _full(strings, provenance="catalog") -> NullData:
    return NullData(tuple(ex.parse(s) for s in strings), provenance=provenance)


def build_catenoid_ew(inner: float = 0.01, outer: float = 100.0, margin: float = 0.5) -> SurfaceSpec:
    """Catenoid data g = z, dh = -2/z on the annulus inner < |z| < outer.

    The wide margin keeps finite-difference stencils clear of the
    puncture-scale inner hole.
    """
    data = from_gdh(ex.parse("z"), ex.parse("-2/z"))
    return SurfaceSpec(
        data=data,
        domain=annulus(inner, outer, margin=margin),
        basepoint=1.0 + 0j,
        offset=[1.0, 0.0, 0.0],
        name="catenoid-ew",
    )


def build_helicoid_disc(radius: float = 2.0, margin: float = 0.02) -> SurfaceSpec:
    """Helicoid data g = exp(i z), dh = 1 on a disc of the given radius."""
    data = from_gdh(ex.parse("exp(i*z)"), ex.parse("1"))
    return SurfaceSpec(
        data=data,
        domain=disc(0j, radius, margin=margin),
        basepoint=0j,
        offset=[0.0, 0.0, 0.0],
        name="helicoid",
    )


def _build_all() -> dict[str, CatalogEntry]:
    entries = [
        CatalogEntry(
            "catenoid",
            "classical catenoid (cos u cosh v, sin u cosh v, v) on a rectangle",
            SurfaceSpec(
                data=_full(["-sin(z)", "cos(z)", "-i"]),
                domain=rectangle(-3.0 - 1.5j, 3.0 + 1.5j, margin=0.05),
                basepoint=0j,
                offset=[1.0, 0.0, 0.0],
                name="catenoid",
            ),
        ),
        CatalogEntry(
            "catenoid-ew",
            "catenoid from g = z, dh = -2/z on the annulus 0.01 < |z| < 100",
            build_catenoid_ew(),
        ),
        CatalogEntry(
            "helicoid",
            "helicoid from g = exp(i z), dh = 1 on the disc |z| < 2",
            build_helicoid_disc(),
        ),
        CatalogEntry(
            "helicatenoid",
            "null curve Z = (cos z, sin z, -i z) on the disc |z| < 2",
            SurfaceSpec(
                data=_full(["-sin(z)", "cos(z)", "-i"]),
                domain=disc(0j, 2.0, margin=0.02),
                basepoint=0j,
                offset=[1.0, 0.0, 0.0],
                name="helicatenoid",
            ),
        ),
        CatalogEntry(
            "plane",
            "flat plane from the constant null datum (1, i, 0)",
            SurfaceSpec(
                data=_full(["1", "i", "0"]),
                domain=disc(0j, 1.0, margin=0.01),
                basepoint=0j,
                offset=[0.0, 0.0, 0.0],
                name="plane",
            ),
        ),
        CatalogEntry(
            "enneper",
            "Enneper surface, g = z, dh = z (stored pole-free) on the disc |z| < 1.5",
            SurfaceSpec(
                # expanded form of from_gdh(z, z); the raw composition has a
                # removable 1/z at the origin that would trip evaluation
                data=_full(["(1 - z^2)/2", "(i/2)*(1 + z^2)", "z"]),
                domain=disc(0j, 1.5, margin=0.015),
                basepoint=0j,
                offset=[0.0, 0.0, 0.0],
                name="enneper",
            ),
        ),
    ]
    return {e.name: e for e in entries}


CATALOG = _build_all()


def names() -> list[str]:
    return list(CATALOG)


def get(name: str) -> SurfaceSpec:
    if name not in CATALOG:
        raise KeyError(f"unknown catalog surface {name!r}; known: {', '.join(CATALOG)}")
    return CATALOG[name].spec
