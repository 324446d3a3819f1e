"""CLI: exit-code contract, determinism, file outputs."""

import json
import math

import numpy as np
import pytest

from minsurf.cli import EXIT_NUMERIC, EXIT_OK, EXIT_SCHEMA, main

FAIL_SPEC = {
    "name": "real-period-failure",
    "dimension": 3,
    "weierstrass": {"type": "full", "f": ["i/z", "1/z", "0"]},
    "domain": {
        "type": "annulus",
        "inner_radius": 0.5,
        "outer_radius": 4.0,
        "margin": 0.05,
    },
    "basepoint": [1.0, 0.0],
}


@pytest.fixture()
def fail_spec_path(tmp_path):
    p = tmp_path / "fail.json"
    p.write_text(json.dumps(FAIL_SPEC))
    return str(p)


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestExitCodes:
    def test_validate_pass_is_zero(self, capsys):
        code, out, _ = _run(capsys, "validate", "catenoid")
        assert code == EXIT_OK
        assert "PASS" in out

    def test_validate_fail_is_two(self, capsys, fail_spec_path):
        code, out, _ = _run(capsys, "validate", fail_spec_path)
        assert code == EXIT_NUMERIC
        assert "FAIL" in out

    def test_schema_error_is_three(self, capsys, tmp_path):
        p = tmp_path / "broken.json"
        p.write_text('{"dimension": 3}')
        code, _, err = _run(capsys, "validate", str(p))
        assert code == EXIT_SCHEMA
        assert "error" in err

    def test_unknown_surface_is_three(self, capsys):
        code, _, err = _run(capsys, "eval", "nonexistent", "--z", "0,0")
        assert code == EXIT_SCHEMA

    def test_bad_usage_is_three(self, capsys):
        assert _run(capsys, "eval", "catenoid")[0] == EXIT_SCHEMA

    def test_period_obstruction_is_two(self, capsys):
        code, _, err = _run(capsys, "conjugate", "catenoid-ew")
        assert code == EXIT_NUMERIC

    def test_force_overrides_period_obstruction(self, capsys):
        code, out, _ = _run(capsys, "conjugate", "catenoid-ew", "--force")
        assert code == EXIT_OK

    def test_eval_outside_domain_is_three(self, capsys):
        code, _, _ = _run(capsys, "eval", "catenoid", "--z", "50,0")
        assert code == EXIT_SCHEMA


class TestDeterminism:
    def test_validate_json_bytes_stable(self, capsys):
        _, out1, _ = _run(capsys, "validate", "enneper", "--json")
        _, out2, _ = _run(capsys, "validate", "enneper", "--json")
        assert out1 == out2
        payload = json.loads(out1)
        assert payload["verdict"] == "PASS"

    def test_sweep_bytes_stable(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert _run(capsys, "sweep", "helicoid", "--grid", "8x8", "-o", str(a))[0] == EXIT_OK
        assert _run(capsys, "sweep", "helicoid", "--grid", "8x8", "-o", str(b))[0] == EXIT_OK
        assert a.read_bytes() == b.read_bytes()
        header = a.read_text().splitlines()[1]
        assert header == "re(z),im(z),lambda,K,k1,k2,|H|,re(g),im(g)"

    def test_mesh_bytes_stable(self, capsys, tmp_path):
        a, b = tmp_path / "a.obj", tmp_path / "b.obj"
        assert _run(capsys, "mesh", "enneper", "--grid", "16x16", "-o", str(a))[0] == EXIT_OK
        assert _run(capsys, "mesh", "enneper", "--grid", "16x16", "-o", str(b))[0] == EXIT_OK
        assert a.read_bytes() == b.read_bytes()


class TestCommands:
    def test_catalog_lists_all(self, capsys):
        code, out, _ = _run(capsys, "catalog", "--json")
        names = [r["name"] for r in json.loads(out)["surfaces"]]
        assert "catenoid" in names and "enneper" in names

    def test_eval_matches_closed_form(self, capsys):
        code, out, _ = _run(capsys, "eval", "catenoid", "--z", "0.5,0.3", "--json")
        assert code == EXIT_OK
        X = json.loads(out)["points"][0]["X"]
        ref = [
            math.cos(0.5) * math.cosh(0.3),
            math.sin(0.5) * math.cosh(0.3),
            0.3,
        ]
        np.testing.assert_allclose(X, ref, atol=1e-10)

    def test_periods_and_flux(self, capsys):
        code, out, _ = _run(capsys, "flux", "catenoid-ew", "--json")
        assert code == EXIT_OK
        fluxes = json.loads(out)["cycles"][0]["flux"]
        np.testing.assert_allclose(fluxes, [0, 0, -4 * math.pi], atol=1e-8)

    def test_gauss_and_curvature(self, capsys):
        code, out, _ = _run(capsys, "gauss", "catenoid-ew", "--z", "2,0", "--json")
        assert code == EXIT_OK
        assert json.loads(out)["g"] == pytest.approx([2.0, 0.0], abs=1e-12)
        code, out, _ = _run(capsys, "curvature", "catenoid", "--z", "0,0", "--json")
        doc = json.loads(out)
        assert doc["K"] == pytest.approx(-1.0, abs=1e-12)
        assert doc["lambda"] == pytest.approx(1.0, abs=1e-12)

    def test_totalcurvature(self, capsys):
        code, out, _ = _run(
            capsys, "totalcurvature", "helicoid", "--resolution", "96", "--json"
        )
        assert code == EXIT_OK
        assert json.loads(out)["total_curvature"] < 0

    def test_length_ray(self, capsys):
        code, out, _ = _run(capsys, "length", "catenoid-ew", "--ray", "1:1000", "--json")
        assert code == EXIT_OK
        L = json.loads(out)["length"]
        assert L == pytest.approx(1000 - 1e-3, rel=1e-6)

    def test_mesh_counts(self, capsys, tmp_path):
        out_path = tmp_path / "cat.obj"
        code, out, _ = _run(
            capsys, "mesh", "catenoid", "--grid", "64x64", "-o", str(out_path), "--json"
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["vertices"] == 64 * 64
        assert doc["faces"] == 2 * 63 * 63
        lines = out_path.read_text().splitlines()
        assert sum(1 for l in lines if l.startswith("v ")) == 4096

    def test_emit_spec_revalidates_identically(self, capsys, tmp_path):
        emitted = tmp_path / "emitted.json"
        code, out1, _ = _run(
            capsys, "validate", "catenoid-ew", "--json", "--emit-spec", str(emitted)
        )
        assert code == EXIT_OK
        code, out2, _ = _run(capsys, "validate", str(emitted), "--json")
        assert code == EXIT_OK
        assert json.loads(out1) == json.loads(out2)

    def test_associate_roundtrip_through_file(self, capsys, tmp_path):
        rotated = tmp_path / "rot.json"
        code, _, _ = _run(
            capsys, "associate", "helicatenoid", "--t", "3.141592653589793",
            "-o", str(rotated),
        )
        assert code == EXIT_OK
        code, out, _ = _run(capsys, "validate", str(rotated), "--json")
        assert code == EXIT_OK

    def test_minimize_circle_boundary(self, capsys, tmp_path):
        M = N = 17
        lines = []
        ring = (
            [(0, j) for j in range(N)]
            + [(i, N - 1) for i in range(1, M)]
            + [(M - 1, j) for j in range(N - 2, -1, -1)]
            + [(i, 0) for i in range(M - 2, 0, -1)]
        )
        for k, (i, j) in enumerate(ring):
            th = 2 * math.pi * k / len(ring)
            lines.append(f"{i},{j},{math.cos(th)},{math.sin(th)},0")
        b = tmp_path / "circle.csv"
        b.write_text("\n".join(lines) + "\n")
        out_csv = tmp_path / "solution.csv"
        code, out, _ = _run(
            capsys, "minimize", "--boundary", str(b), "--grid", "17x17",
            "-o", str(out_csv), "--json",
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["converged"]
        assert doc["area"] <= doc["dirichlet"]
        # solver output includes the full grid
        rows = [l for l in out_csv.read_text().splitlines() if l and l[0].isdigit()]
        assert len(rows) == M * N

    def test_minimize_rejects_partial_ring(self, capsys, tmp_path):
        b = tmp_path / "partial.csv"
        b.write_text("0,0,1.0,0.0\n")
        code, _, err = _run(capsys, "minimize", "--boundary", str(b), "--grid", "9x9")
        assert code == EXIT_SCHEMA
