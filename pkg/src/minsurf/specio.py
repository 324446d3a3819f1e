"""Surface-spec JSON ingestion and deterministic serialization.

The published schema lives in ``schemas/surface-spec.json``.  All floats
are written with 17 significant digits so output bytes are reproducible;
complex numbers serialize as ``[re, im]`` pairs.
"""

from __future__ import annotations

import json
from importlib import resources

import jsonschema
import numpy as np

from . import expr as ex
from .domain import CircledDomain, Disc, Hole, Rectangle
from .weierstrass import DEFAULT_TOL, NullData, SurfaceReport, SurfaceSpec, from_gdh

__all__ = [
    "SchemaError",
    "load_spec",
    "load_spec_file",
    "spec_to_dict",
    "report_to_dict",
    "dumps",
    "schema",
]


class SchemaError(Exception):
    """Input does not match the surface-spec schema."""


def schema() -> dict:
    with resources.files("minsurf.schemas").joinpath("surface-spec.json").open() as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# Deterministic JSON output


def _fmt(x: float) -> str:
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError("non-finite float in JSON output")
    s = format(float(x), ".17g")
    return s


def dumps(obj, indent: int = 0) -> str:
    """Serialize to JSON with 17-significant-digit floats; insertion order
    is preserved, so identical inputs give identical bytes."""
    pad = " " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}  {json.dumps(str(k))}: {dumps(v, indent + 2)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        flat = all(isinstance(v, (int, float, np.integer, np.floating)) for v in seq)
        if flat:
            return "[" + ", ".join(dumps(v) for v in seq) + "]"
        items = [f"{pad}  {dumps(v, indent + 2)}" for v in seq]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if obj is None:
        return "null"
    if isinstance(obj, complex):
        return dumps([obj.real, obj.imag])
    raise TypeError(f"cannot serialize {type(obj)}")


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


# ---------------------------------------------------------------------------
# Loading


def load_spec_file(path: str) -> SurfaceSpec:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise SchemaError(f"cannot read spec file {path}: {e}") from e
    return load_spec(doc)


def load_spec(doc: dict) -> SurfaceSpec:
    try:
        jsonschema.validate(doc, schema())
    except jsonschema.ValidationError as e:
        raise SchemaError(f"spec does not match schema: {e.message}") from e

    n = doc["dimension"]
    w = doc["weierstrass"]
    try:
        if w["type"] == "full":
            if len(w["f"]) != n:
                raise SchemaError(f"expected {n} expressions, got {len(w['f'])}")
            data = NullData(tuple(ex.parse(s) for s in w["f"]), provenance="user")
        else:
            if n != 3:
                raise SchemaError("gdh data is three-dimensional")
            data = from_gdh(ex.parse(w["g"]), ex.parse(w["dh"]))
    except ex.ParseError as e:
        raise SchemaError(f"bad expression: {e}") from e

    dom = _load_domain(doc["domain"])
    basepoint = complex(*doc["basepoint"])
    offset = doc.get("offset", [0.0] * n)
    if len(offset) != n:
        raise SchemaError(f"offset must have {n} components")
    tol = doc.get("tolerances", {}).get("tol", DEFAULT_TOL)
    try:
        return SurfaceSpec(
            data=data,
            domain=dom,
            basepoint=basepoint,
            offset=offset,
            name=doc.get("name", ""),
            tol=tol,
        )
    except ValueError as e:
        raise SchemaError(str(e)) from e


def _load_domain(d: dict) -> CircledDomain:
    holes = [Hole(complex(*h["center"]), h["radius"]) for h in d.get("holes", [])]
    holes += [Hole(complex(*p), 0.0) for p in d.get("punctures", [])]
    margin = d.get("margin", 0.0)
    t = d["type"]
    from .domain import DomainError

    try:
        if t == "disc":
            outer: Disc | Rectangle = Disc(complex(*d["center"]), d["radius"])
        elif t == "rectangle":
            outer = Rectangle(complex(*d["corner_min"]), complex(*d["corner_max"]))
        elif t == "annulus":
            center = complex(*d.get("center", [0.0, 0.0]))
            outer = Disc(center, d["outer_radius"])
            holes = [Hole(center, d["inner_radius"])] + holes
        else:  # circled
            outer_doc = d["outer"]
            if outer_doc["type"] == "disc":
                outer = Disc(complex(*outer_doc["center"]), outer_doc["radius"])
            else:
                outer = Rectangle(
                    complex(*outer_doc["corner_min"]), complex(*outer_doc["corner_max"])
                )
        return CircledDomain(outer, tuple(holes), margin)
    except DomainError as e:
        raise SchemaError(str(e)) from e


# ---------------------------------------------------------------------------
# Emission


def _domain_to_dict(dom: CircledDomain) -> dict:
    punctures = [_pair(h.center) for h in dom.holes if h.radius == 0]
    holes = [
        {"center": _pair(h.center), "radius": float(h.radius)}
        for h in dom.holes
        if h.radius > 0
    ]
    if isinstance(dom.outer, Disc):
        out = {
            "type": "disc",
            "center": _pair(dom.outer.center),
            "radius": float(dom.outer.radius),
        }
    else:
        out = {
            "type": "rectangle",
            "corner_min": _pair(dom.outer.corner_min),
            "corner_max": _pair(dom.outer.corner_max),
        }
    out["holes"] = holes
    out["punctures"] = punctures
    out["margin"] = float(dom.margin)
    return out


def spec_to_dict(spec: SurfaceSpec) -> dict:
    return {
        "name": spec.name,
        "dimension": spec.data.n,
        "weierstrass": {"type": "full", "f": [str(c) for c in spec.data.components]},
        "domain": _domain_to_dict(spec.domain),
        "basepoint": _pair(spec.basepoint),
        "offset": [float(x) for x in spec.offset],
        "tolerances": {"tol": float(spec.tol)},
    }


def report_to_dict(report: SurfaceReport) -> dict:
    return {
        "nullity_residual": report.nullity_residual,
        "holomorphy_residual": report.holomorphy_residual,
        "min_data_norm": report.min_data_norm,
        "tol": report.tol,
        "samples": report.sample_count,
        "cycles": [
            {
                "period": [_pair(p) for p in row],
                "real_period": [float(p.real) for p in row],
                "flux": [float(p.imag) for p in row],
            }
            for row in report.periods
        ],
        "flags": {
            "real_periods_vanish": report.real_periods_vanish,
            "all_periods_vanish": report.all_periods_vanish,
        },
    }
