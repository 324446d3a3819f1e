"""Command-line interface.

Exit codes: 0 success, 2 numeric validation failure, 3 malformed input
(bad spec file, unknown surface, unparsable arguments).  All floating
output uses 17 significant digits so runs are byte-reproducible.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import __version__, catalog, family, geometry, specio, variational
from . import weierstrass as wst
from .domain import DomainError, PathPolyline
from .expr import ParseError
from .meshing import domain_grid, evaluate_grid, obj_lines, sweep_rows
from .quadrature import QuadratureError
from .weierstrass import PeriodError, SurfaceSpec

EXIT_OK = 0
EXIT_NUMERIC = 2
EXIT_SCHEMA = 3


class NumericFailure(Exception):
    """A computation ran but its validation contract failed."""


def _f(x: float) -> str:
    return format(float(x), ".17g")


def _fc(z: complex) -> str:
    return f"{_f(z.real)} {'+' if z.imag >= 0 else '-'} {_f(abs(z.imag))}i"


def _load_spec(name_or_path: str, tol: float | None) -> SurfaceSpec:
    if name_or_path in catalog.CATALOG:
        spec = catalog.get(name_or_path)
    elif name_or_path.endswith(".json"):
        spec = specio.load_spec_file(name_or_path)
    else:
        raise specio.SchemaError(
            f"unknown surface {name_or_path!r}: not a catalog name "
            f"({', '.join(catalog.names())}) and not a .json spec file"
        )
    if tol is not None:
        spec = SurfaceSpec(
            data=spec.data,
            domain=spec.domain,
            basepoint=spec.basepoint,
            offset=spec.offset,
            name=spec.name,
            tol=tol,
        )
    return spec


def _parse_z(s: str) -> complex:
    try:
        if "," in s:
            re_s, im_s = s.split(",")
            return complex(float(re_s), float(im_s))
        return complex(s.replace("i", "j"))
    except ValueError as e:
        raise specio.SchemaError(f"cannot parse point {s!r}: use RE,IM") from e


def _parse_grid(s: str) -> tuple[int, int]:
    try:
        a, b = s.lower().split("x")
        nu, nv = int(a), int(b)
        if nu < 2 or nv < 2:
            raise ValueError
        return nu, nv
    except ValueError as e:
        raise specio.SchemaError(f"cannot parse grid size {s!r}: use NUxNV") from e


def _emit(payload: dict, args, text_lines: list[str]) -> None:
    if args.json:
        print(specio.dumps(payload))
    else:
        for line in text_lines:
            print(line)


def _maybe_check_periods(spec: SurfaceSpec, args) -> None:
    if not args.force:
        spec.require_real_periods_vanish()


# ---------------------------------------------------------------------------
# Subcommands


def cmd_catalog(args) -> int:
    rows = [
        {
            "name": e.name,
            "description": e.description,
            "dimension": e.spec.data.n,
        }
        for e in catalog.CATALOG.values()
    ]
    _emit(
        {"surfaces": rows},
        args,
        [f"{r['name']:<14} n={r['dimension']}  {r['description']}" for r in rows],
    )
    return EXIT_OK


def cmd_validate(args) -> int:
    spec = _load_spec(args.spec, args.tol)
    report = wst.validate(spec, samples=args.samples, seed=args.seed)
    if args.emit_spec:
        with open(args.emit_spec, "w") as fh:
            fh.write(specio.dumps(specio.spec_to_dict(spec)) + "\n")
    payload = specio.report_to_dict(report)
    verdict = "PASS" if report.passes() else "FAIL"
    payload["verdict"] = verdict
    lines = [
        f"surface:             {spec.name or args.spec}",
        f"samples:             {report.sample_count}",
        f"nullity residual:    {_f(report.nullity_residual)}",
        f"holomorphy residual: {_f(report.holomorphy_residual)}",
        f"min |f|:             {_f(report.min_data_norm)}",
        f"cycles:              {len(report.periods)}",
        f"real periods vanish: {report.real_periods_vanish}",
        f"all periods vanish:  {report.all_periods_vanish}",
        f"verdict:             {verdict}",
    ]
    _emit(payload, args, lines)
    return EXIT_OK if report.passes() else EXIT_NUMERIC


def cmd_periods(args) -> int:
    spec = _load_spec(args.spec, args.tol)
    periods = spec.basis_periods()
    payload = {
        "cycles": [
            {"period": [[p.real, p.imag] for p in row]} for row in periods
        ]
    }
    lines = []
    for k, row in enumerate(periods):
        lines.append(f"cycle {k}: (" + ", ".join(_fc(p) for p in row) + ")")
    if not len(periods):
        lines = ["no nontrivial cycles (simply connected domain)"]
    _emit(payload, args, lines)
    return EXIT_OK


def cmd_flux(args) -> int:
    spec = _load_spec(args.spec, args.tol)
    periods = spec.basis_periods()
    payload = {"cycles": [{"flux": [p.imag for p in row]} for row in periods]}
    lines = [
        f"cycle {k}: (" + ", ".join(_f(p.imag) for p in row) + ")"
        for k, row in enumerate(periods)
    ]
    if not len(periods):
        lines = ["no nontrivial cycles (simply connected domain)"]
    _emit(payload, args, lines)
    return EXIT_OK


def cmd_eval(args) -> int:
    spec = _load_spec(args.spec, args.tol)
    _maybe_check_periods(spec, args)
    points = [_parse_z(s) for s in args.z]
    results = []
    for z in points:
        if not spec.domain.contains(z):
            raise specio.SchemaError(f"point {z} is outside the domain")
        results.append(wst.evaluate_surface(spec, z))
    payload = {
        "points": [
            {"z": [z.real, z.imag], "X": [float(x) for x in X]}
            for z, X in zip(points, results)
        ]
    }
    lines = [
        f"X({_fc(z)}) = (" + ", ".join(_f(x) for x in X) + ")"
        for z, X in zip(points, results)
    ]
    _emit(payload, args, lines)
    return EXIT_OK


def cmd_gauss(args) -> int:
    spec = _load_spec(args.spec, args.tol)
    z = _parse_z(args.z)
    if not spec.domain.contains(z):
        raise specio.SchemaError(f"point {z} is outside the domain")
    if spec.data.n == 3:
        g = geometry.gauss_map(spec.data, z)
        N = geometry.stereographic(g)
        payload = {
            "z": [z.real, z.imag],
            "g": None if math.isinf(abs(g)) else [g.real, g.imag],
            "normal": [float(x) for x in N],
        }
        gtxt = "inf" if math.isinf(abs(g)) else _fc(g)
        lines = [
            f"g({_fc(z)}) = {gtxt}",
            "N = (" + ", ".join(_f(x) for x in N) + ")",
        ]
    else:
        rep = geometry.generalized_gauss_map(spec.data, z)
        payload = {
            "z": [z.real, z.imag],
            "projective": [[c.real, c.imag] for c in rep],
        }
        lines = ["[" + " : ".join(_fc(c) for c in rep) + "]"]
    _emit(payload, args, lines)
    return EXIT_OK


def cmd_curvature(args) -> int:
    spec = _load_spec(args.spec, args.tol)
    z = _parse_z(args.z)
    if not spec.domain.contains(z):
        raise specio.SchemaError(f"point {z} is outside the domain")
    lam = geometry.metric_coefficient(spec.data, z)
    K = geometry.gauss_curvature(spec.data, z)
    k1, k2 = geometry.principal_curvatures(spec.data, z)
    payload = {
        "z": [z.real, z.imag],
        "lambda": lam,
        "K": K,
        "k1": k1,
        "k2": k2,
    }
    lines = [
        f"lambda = {_f(lam)}",
        f"K      = {_f(K)}",
        f"k1     = {_f(k1)}",
        f"k2     = {_f(k2)}",
    ]
    _emit(payload, args, lines)
    return EXIT_OK


def cmd_totalcurvature(args) -> int:
    spec = _load_spec(args.spec, args.tol)
    tc = geometry.total_curvature(spec, resolution=args.resolution)
    payload = {"total_curvature": tc, "over_4pi": tc / (4.0 * math.pi)}
    _emit(payload, args, [f"total curvature = {_f(tc)}  ({_f(tc / (4 * math.pi))} * 4pi)"])
    return EXIT_OK


def cmd_length(args) -> int:
    spec = _load_spec(args.spec, args.tol)
    _maybe_check_periods(spec, args)
    if args.ray:
        try:
            a_s, b_s = args.ray.split(":")
            a, b = float(a_s), float(b_s)
        except ValueError as e:
            raise specio.SchemaError(f"cannot parse ray {args.ray!r}: use A:B") from e
        phase = complex(math.cos(args.angle), math.sin(args.angle))
        path = PathPolyline((a * phase, b * phase))
    elif args.path:
        path = PathPolyline(tuple(_parse_z(s) for s in args.path.split()))
    else:
        raise specio.SchemaError("length needs --ray A:B or --path 'x,y x,y ...'")
    L = geometry.path_length(spec, path, tol=args.tol or 1e-10)
    payload = {"length": L}
    _emit(payload, args, [f"intrinsic length = {_f(L)}"])
    return EXIT_OK


def cmd_mesh(args) -> int:
    spec = _load_spec(args.spec, args.tol)
    if args.t:
        spec = family.associate_spec(spec, args.t)
    _maybe_check_periods(spec, args)
    nu, nv = _parse_grid(args.grid)
    axes = tuple(int(a) for a in args.axes.split(","))
    if len(axes) != 3 or any(a < 0 or a >= spec.data.n for a in axes):
        raise specio.SchemaError(f"--axes must pick 3 coordinates below {spec.data.n}")
    grid = domain_grid(spec.domain, nu, nv)
    verts = evaluate_grid(spec, grid)
    lines = obj_lines(verts, grid.valid, axes=axes, header=f"minsurf {__version__}")
    with open(args.output, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    nverts = int(np.count_nonzero(grid.valid))
    nfaces = sum(1 for l in lines if l.startswith("f "))
    if args.json:
        print(specio.dumps({"output": args.output, "vertices": nverts, "faces": nfaces}))
    else:
        print(f"wrote {args.output}: {nverts} vertices, {nfaces} triangles")
    return EXIT_OK


def cmd_sweep(args) -> int:
    spec = _load_spec(args.spec, args.tol)
    nu, nv = _parse_grid(args.grid)
    grid = domain_grid(spec.domain, nu, nv)
    rows = list(sweep_rows(spec, grid))
    header = "re(z),im(z),lambda,K,k1,k2,|H|,re(g),im(g)"
    out_lines = [f"# minsurf {__version__}", header]
    for z, lam, K, k1, k2, H, g in rows:
        out_lines.append(
            ",".join(
                _f(v) for v in (z.real, z.imag, lam, K, k1, k2, H, g.real, g.imag)
            )
        )
    text = "\n".join(out_lines) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        print(f"wrote {args.output}: {len(rows)} samples")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _emit_family_spec(spec: SurfaceSpec, args) -> int:
    doc = specio.spec_to_dict(spec)
    text = specio.dumps(doc) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        print(f"wrote {args.output}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_associate(args) -> int:
    spec = _load_spec(args.spec, args.tol)
    if args.force:
        rotated = SurfaceSpec(
            data=family.associate(spec.data, args.t),
            domain=spec.domain,
            basepoint=spec.basepoint,
            offset=spec.offset,
            name=f"{spec.name}@t={args.t:g}",
            tol=spec.tol,
        )
    else:
        rotated = family.associate_spec(spec, args.t)
    return _emit_family_spec(rotated, args)


def cmd_conjugate(args) -> int:
    spec = _load_spec(args.spec, args.tol)
    if args.force:
        conj = SurfaceSpec(
            data=family.conjugate(spec.data),
            domain=spec.domain,
            basepoint=spec.basepoint,
            offset=spec.offset,
            name=f"{spec.name}-conjugate",
            tol=spec.tol,
        )
    else:
        conj = family.conjugate_spec(spec)
    return _emit_family_spec(conj, args)


def _read_grid_csv(path: str, shape: tuple[int, int]):
    M, N = shape
    rows = []
    try:
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#") or line[0].isalpha():
                    continue
                parts = line.split(",")
                rows.append((int(parts[0]), int(parts[1]), [float(p) for p in parts[2:]]))
    except (OSError, ValueError, IndexError) as e:
        raise specio.SchemaError(f"cannot read grid CSV {path}: {e}") from e
    if not rows:
        raise specio.SchemaError(f"no data rows in {path}")
    n = len(rows[0][2])
    values = np.zeros((M, N, n))
    fixed = np.zeros((M, N), dtype=bool)
    for i, j, x in rows:
        if not (0 <= i < M and 0 <= j < N) or len(x) != n:
            raise specio.SchemaError(f"row ({i},{j}) out of range for grid {M}x{N}")
        values[i, j] = x
        fixed[i, j] = True
    ring = np.zeros((M, N), dtype=bool)
    ring[0, :] = ring[-1, :] = ring[:, 0] = ring[:, -1] = True
    if not fixed[ring].all():
        raise specio.SchemaError("boundary CSV must cover the full outer ring of the grid")
    return values, fixed


def cmd_minimize(args) -> int:
    M, N = _parse_grid(args.grid)
    values, fixed = _read_grid_csv(args.boundary, (M, N))
    tol = args.tol or 1e-10
    result = variational.minimize_dirichlet(values, solver=args.solver, tol=tol)
    g = result.grid
    a, d = variational.area(g), variational.dirichlet(g)
    if args.output:
        n = g.values.shape[2]
        lines = [f"# minsurf {__version__}", "i,j," + ",".join(f"x{k+1}" for k in range(n))]
        for i in range(M):
            for j in range(N):
                lines.append(f"{i},{j}," + ",".join(_f(x) for x in g.values[i, j]))
        with open(args.output, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    payload = {
        "iterations": result.iterations,
        "residual": result.residual,
        "converged": result.converged,
        "dirichlet": d,
        "area": a,
    }
    _emit(
        payload,
        args,
        [
            f"solver:    {args.solver}",
            f"iterations: {result.iterations}",
            f"residual:  {_f(result.residual)}",
            f"converged: {result.converged}",
            f"dirichlet: {_f(d)}",
            f"area:      {_f(a)}",
        ],
    )
    return EXIT_OK if result.converged else EXIT_NUMERIC


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="minsurf",
        description="Weierstrass-data minimal surfaces: validation, geometry, meshing.",
    )
    p.add_argument("--version", action="version", version=f"minsurf {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, spec=True):
        if spec:
            sp.add_argument("spec", help="catalog name or path to a surface-spec .json")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--tol", type=float, default=None, help="quadrature/validation tolerance")
        sp.add_argument("--seed", type=int, default=None, help="sampling seed (omit for deterministic default)")
        sp.add_argument("--force", action="store_true", help="skip period preconditions")
        return sp

    sp = common(sub.add_parser("catalog", help="list built-in surfaces"), spec=False)
    sp.set_defaults(fn=cmd_catalog)

    sp = common(sub.add_parser("validate", help="residuals, periods, verdict"))
    sp.add_argument("--samples", type=int, default=4096)
    sp.add_argument("--emit-spec", metavar="PATH", help="also write the spec as JSON")
    sp.set_defaults(fn=cmd_validate)

    sp = common(sub.add_parser("periods", help="complex periods over the homology basis"))
    sp.set_defaults(fn=cmd_periods)

    sp = common(sub.add_parser("flux", help="flux vectors (imaginary parts of periods)"))
    sp.set_defaults(fn=cmd_flux)

    sp = common(sub.add_parser("eval", help="evaluate the immersion at points"))
    sp.add_argument("--z", action="append", required=True, metavar="RE,IM")
    sp.set_defaults(fn=cmd_eval)

    sp = common(sub.add_parser("gauss", help="Gauss map and unit normal at a point"))
    sp.add_argument("--z", required=True, metavar="RE,IM")
    sp.set_defaults(fn=cmd_gauss)

    sp = common(sub.add_parser("curvature", help="metric and curvatures at a point"))
    sp.add_argument("--z", required=True, metavar="RE,IM")
    sp.set_defaults(fn=cmd_curvature)

    sp = common(sub.add_parser("totalcurvature", help="integral of K over the domain"))
    sp.add_argument("--resolution", type=int, default=256)
    sp.set_defaults(fn=cmd_totalcurvature)

    sp = common(sub.add_parser("length", help="intrinsic length of a parameter path"))
    sp.add_argument("--ray", metavar="A:B", help="radial segment from A to B along --angle")
    sp.add_argument("--angle", type=float, default=0.0)
    sp.add_argument("--path", metavar="'X,Y X,Y ...'", help="polyline vertices")
    sp.set_defaults(fn=cmd_length)

    sp = common(sub.add_parser("mesh", help="export a triangle mesh as Wavefront OBJ"))
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--grid", default="64x64", metavar="NUxNV")
    sp.add_argument("--t", type=float, default=0.0, help="associated-family phase")
    sp.add_argument("--axes", default="0,1,2", help="coordinates to export (n > 3)")
    sp.set_defaults(fn=cmd_mesh)

    sp = common(sub.add_parser("sweep", help="CSV of pointwise invariants on a grid"))
    sp.add_argument("-o", "--output", default=None)
    sp.add_argument("--grid", default="16x16", metavar="NUxNV")
    sp.set_defaults(fn=cmd_sweep)

    sp = common(sub.add_parser("associate", help="rotate the data by exp(i t)"))
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("-o", "--output", default=None)
    sp.set_defaults(fn=cmd_associate)

    sp = common(sub.add_parser("conjugate", help="conjugate surface (f -> -i f)"))
    sp.add_argument("-o", "--output", default=None)
    sp.set_defaults(fn=cmd_conjugate)

    sp = common(sub.add_parser("minimize", help="harmonic extension of grid boundary data"), spec=False)
    sp.add_argument("--boundary", required=True, metavar="CSV")
    sp.add_argument("--grid", required=True, metavar="MxN")
    sp.add_argument("--solver", default="conjugate", choices=sorted(variational.SOLVERS))
    sp.add_argument("-o", "--output", default=None)
    sp.set_defaults(fn=cmd_minimize)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on bad usage; remap to the input-error code
        return EXIT_SCHEMA if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (specio.SchemaError, ParseError, DomainError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SCHEMA
    except (PeriodError, NumericFailure, geometry.NonConformalError) as e:
        print(f"validation failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except (QuadratureError, ValueError) as e:
        print(f"validation failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
