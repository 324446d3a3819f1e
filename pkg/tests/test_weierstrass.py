"""Null data, periods, flux, and surface evaluation against closed forms
and residue-calculus oracles."""

import cmath
import math

import numpy as np
import pytest

from minsurf import catalog
from minsurf import expr as ex
from minsurf.domain import Cycle, PathPolyline, annulus
from minsurf.weierstrass import (
    NullData,
    PeriodError,
    SurfaceSpec,
    evaluate_null_curve,
    evaluate_surface,
    flux,
    from_gdh,
    integrate_path,
    period,
    spinor,
    validate,
)

RNG = np.random.default_rng(20240818)


def _circle(radius=1.0, center=0j, k=64):
    th = np.linspace(0.0, 2 * math.pi, k + 1)
    return Cycle(tuple(center + radius * np.exp(1j * th)))


class TestNullity:
    def test_catalog_data_is_null(self):
        for name in catalog.names():
            spec = catalog.get(name)
            zs = spec.domain.sample(512)
            assert spec.data.nullity_residual(zs) <= 1e-13, name

    def test_from_gdh_is_null_by_construction(self):
        # the identity (1/2 (1/g - g))^2 + (i/2 (1/g + g))^2 + 1 = 0 must
        # survive composition with arbitrary g, dh
        for g_s, dh_s in [("z", "-2/z"), ("exp(i*z)", "1"), ("z^2 + 1", "sin(z)")]:
            data = from_gdh(ex.parse(g_s), ex.parse(dh_s))
            zs = 0.3 + RNG.random(64) + 1j * RNG.random(64)
            assert data.nullity_residual(zs) <= 1e-13

    def test_spinor_lands_on_quadric(self):
        z = RNG.standard_normal(1000) + 1j * RNG.standard_normal(1000)
        w = RNG.standard_normal(1000) + 1j * RNG.standard_normal(1000)
        phi = spinor(z, w)
        rel = np.abs(np.sum(phi * phi, axis=0)) / np.sum(np.abs(phi) ** 2, axis=0)
        assert float(np.max(rel)) <= 1e-14

    def test_scaling_preserves_nullity(self):
        data = catalog.get("catenoid-ew").data.scaled(0.7 - 1.3j)
        zs = 1.0 + RNG.random(32)
        assert data.nullity_residual(zs) <= 1e-13


class TestPeriods:
    def test_catenoid_period_matches_residue_oracle(self):
        # f = (1 - 1/z^2, -i (1 + 1/z^2), -2/z): residues (0, 0, -2), so
        # the period is 2 pi i (0, 0, -2) = (0, 0, -4 pi i)
        data = catalog.get("catenoid-ew").data
        p = period(data, _circle(1.0), tol=1e-12)
        np.testing.assert_allclose(p, [0.0, 0.0, -4j * math.pi], atol=1e-10)

    def test_flux_vector(self):
        data = catalog.get("catenoid-ew").data
        np.testing.assert_allclose(
            flux(data, _circle(1.0), tol=1e-12), [0.0, 0.0, -4 * math.pi], atol=1e-10
        )

    def test_homologous_cycles_agree(self):
        data = catalog.get("catenoid-ew").data
        p1 = period(data, _circle(0.5))
        p2 = period(data, _circle(7.0, center=0j, k=48))
        square = Cycle((2 + 2j, -2 + 2j, -2 - 2j, 2 - 2j, 2 + 2j))
        p3 = period(data, square)
        assert np.max(np.abs(p1 - p2)) <= 2e-10
        assert np.max(np.abs(p1 - p3)) <= 2e-10

    def test_winding_twice_doubles_the_period(self):
        data = catalog.get("catenoid-ew").data
        th = np.linspace(0.0, 4 * math.pi, 129)
        double = Cycle(tuple(np.exp(1j * th)))
        np.testing.assert_allclose(
            period(data, double), 2 * period(data, _circle(1.0)), atol=1e-9
        )

    def test_null_curve_requirement_rejects_catenoid(self):
        spec = catalog.get("catenoid-ew")
        spec.require_real_periods_vanish()  # fine: flux only
        with pytest.raises(PeriodError) as err:
            spec.require_all_periods_vanish()
        assert err.value.cycle_index == 0

    def test_nonvanishing_real_period_detected(self):
        # f = (i/z, 1/z, 0) is null with period 2 pi i (i, 1, 0), whose
        # real part (-2 pi, 0, 0) obstructs single-valuedness
        data = NullData((ex.parse("i/z"), ex.parse("1/z"), ex.parse("0")))
        spec = SurfaceSpec(
            data=data, domain=annulus(0.5, 4.0, margin=0.05), basepoint=1.0 + 0j
        )
        with pytest.raises(PeriodError):
            spec.require_real_periods_vanish()
        p = spec.basis_periods()[0]
        np.testing.assert_allclose(p, [-2 * math.pi, 2j * math.pi, 0], atol=1e-10)


class TestEvaluation:
    def test_catenoid_closed_form(self):
        spec = catalog.get("catenoid")
        for _ in range(20):
            u = float(RNG.uniform(-2.5, 2.5))
            v = float(RNG.uniform(-1.2, 1.2))
            X = evaluate_surface(spec, complex(u, v))
            ref = [math.cos(u) * math.cosh(v), math.sin(u) * math.cosh(v), v]
            np.testing.assert_allclose(X, ref, atol=1e-11)

    def test_helicoid_closed_form(self):
        spec = catalog.get("helicoid")
        for _ in range(20):
            z = complex(RNG.uniform(-1.2, 1.2), RNG.uniform(-1.2, 1.2))
            x, y = z.real, z.imag
            ref = [
                math.sin(x) * math.sinh(y),
                -math.cos(x) * math.sinh(y),
                x,
            ]
            np.testing.assert_allclose(evaluate_surface(spec, z), ref, atol=1e-11)

    def test_enneper_closed_form(self):
        spec = catalog.get("enneper")
        for _ in range(20):
            z = complex(RNG.uniform(-0.9, 0.9), RNG.uniform(-0.9, 0.9))
            Z = np.array(
                [z / 2 - z**3 / 6, 1j * (z / 2 + z**3 / 6), z**2 / 2]
            )
            np.testing.assert_allclose(evaluate_surface(spec, z), Z.real, atol=1e-11)

    def test_route_independence_around_hole(self):
        # with vanishing real periods the integral over any two homotopy-
        # inequivalent routes agrees
        spec = catalog.get("catenoid-ew")
        data = spec.data
        above = PathPolyline((1.0 + 0j, 1j, -1.0 + 0j))
        below = PathPolyline((1.0 + 0j, -1j, -1.0 + 0j))
        xa = integrate_path(data, above).real
        xb = integrate_path(data, below).real
        np.testing.assert_allclose(xa, xb, atol=1e-9)
        np.testing.assert_allclose(
            evaluate_surface(spec, -1.0 + 0j), spec.offset + xa, atol=1e-9
        )

    def test_basepoint_evaluates_to_offset(self):
        for name in catalog.names():
            spec = catalog.get(name)
            np.testing.assert_allclose(
                evaluate_surface(spec, spec.basepoint), spec.offset, atol=1e-12
            )

    def test_null_curve_of_helicatenoid(self):
        spec = catalog.get("helicatenoid")
        z = 0.4 + 0.7j
        Z = evaluate_null_curve(spec, z)
        ref = np.array([cmath.cos(z), cmath.sin(z), -1j * z]) - np.array([1.0, 0, 0])
        np.testing.assert_allclose(Z - spec.offset.astype(complex), ref, atol=1e-11)


class TestValidate:
    def test_report_passes_for_catalog(self):
        for name in catalog.names():
            report = validate(catalog.get(name), samples=512)
            assert report.passes(), name
            assert report.nullity_residual <= 1e-12
            assert report.min_data_norm > 0
            assert report.holomorphy_residual <= 1e-6

    def test_real_and_flux_parts(self):
        report = validate(catalog.get("catenoid-ew"), samples=256)
        assert report.real_periods_vanish
        assert not report.all_periods_vanish
        np.testing.assert_allclose(
            report.flux_vectors[0], [0.0, 0.0, -4 * math.pi], atol=1e-8
        )

    def test_validate_is_deterministic(self):
        r1 = validate(catalog.get("enneper"), samples=256)
        r2 = validate(catalog.get("enneper"), samples=256)
        assert r1.nullity_residual == r2.nullity_residual
        assert r1.holomorphy_residual == r2.holomorphy_residual
