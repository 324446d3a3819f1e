"""Jets, Gauss maps, curvature, and intrinsic lengths.

The second-fundamental-form oracle here builds the shape operator purely
from finite-difference jets and cross products, independent of the
holomorphic curvature formulas it checks.
"""

import math

import numpy as np
import pytest

from minsurf import catalog
from minsurf import expr as ex
from minsurf import geometry as geo
from minsurf.domain import PathPolyline, annulus
from minsurf.weierstrass import NullData, SurfaceSpec, from_gdh

RNG = np.random.default_rng(20240819)


def _second_form_oracle(j):
    """(H, K) from the jet alone: b_ij = X_ij . N over the first form."""
    N = geo.unit_normal(j)
    E = float(j.X_u @ j.X_u)
    F = float(j.X_u @ j.X_v)
    G = float(j.X_v @ j.X_v)
    b11 = float(j.X_uu @ N)
    b12 = float(j.X_uv @ N)
    b22 = float(j.X_vv @ N)
    det1 = E * G - F * F
    K = (b11 * b22 - b12 * b12) / det1
    H = (E * b22 - 2 * F * b12 + G * b11) / (2 * det1)
    return H, K


class TestJets:
    def test_jet_matches_closed_form_derivatives(self):
        spec = catalog.get("catenoid")
        u, v = 0.6, 0.4
        j = geo.jet(spec, complex(u, v))
        np.testing.assert_allclose(
            j.X_u,
            [-math.sin(u) * math.cosh(v), math.cos(u) * math.cosh(v), 0.0],
            atol=1e-7,
        )
        np.testing.assert_allclose(
            j.X_v,
            [math.cos(u) * math.sinh(v), math.sin(u) * math.sinh(v), 1.0],
            atol=1e-7,
        )
        np.testing.assert_allclose(
            j.X_uu,
            [-math.cos(u) * math.cosh(v), -math.sin(u) * math.cosh(v), 0.0],
            atol=1e-5,
        )

    def test_jet_step_shrinks_near_holes(self):
        spec = catalog.get("catenoid-ew")
        far = geo.jet(spec, 10.0 + 0j)
        near = geo.jet(spec, 0.6 + 0j)
        assert near.h < far.h

    def test_stencil_leaving_domain_raises(self):
        spec = catalog.get("helicoid")
        with pytest.raises(geo.StencilError):
            geo.jet(spec, 1.979 + 0j, h=0.05)


class TestMinimalityDiagnostics:
    @pytest.mark.parametrize("name", catalog.names())
    def test_pointwise_residuals(self, name):
        spec = catalog.get(name)
        for z in spec.domain.sample(32):
            j = geo.jet(spec, complex(z))
            assert geo.conformality_residual(j) <= 1e-6
            du, dv = geo.laplacian_orthogonality(j)
            assert abs(du) <= 1e-6 and abs(dv) <= 1e-6
            assert float(np.linalg.norm(geo.mean_curvature_vector(j))) <= 1e-6

    def test_cylinder_control_is_not_minimal(self):
        def cylinder(z):
            u, v = z.real, z.imag
            return np.array([math.cos(u), math.sin(u), v])

        j = geo.jet_from_fn(cylinder, 0.3 + 0.2j, h=1e-4)
        H = geo.mean_curvature_vector(j)
        assert float(np.linalg.norm(H)) == pytest.approx(1.0, abs=1e-4)
        du, dv = geo.laplacian_orthogonality(j)
        # Delta X is normal for any immersion; the residuals stay tiny
        # even though Delta X itself is order 1
        assert abs(du) <= 1e-6 and abs(dv) <= 1e-6

    def test_nonconformal_jet_rejected(self):
        def stretched(z):
            return np.array([2 * z.real, z.imag, 0.0])

        j = geo.jet_from_fn(stretched, 0j, h=1e-4)
        with pytest.raises(geo.NonConformalError):
            geo.mean_curvature_vector(j)

    def test_second_form_oracle_agrees_with_holomorphic_curvature(self):
        for name in ("catenoid", "enneper", "helicoid"):
            spec = catalog.get(name)
            for z in spec.domain.sample(8):
                z = complex(z)
                j = geo.jet(spec, z, h=1e-3 * spec.domain.diameter)
                H, K = _second_form_oracle(j)
                assert abs(H) <= 1e-4
                assert K == pytest.approx(geo.gauss_curvature(spec.data, z), rel=2e-3, abs=1e-6)


class TestGaussMaps:
    def test_catenoid_gauss_map_is_identity(self):
        spec = catalog.get("catenoid-ew")
        # restrict to |z| <= 10: the f1 - i f2 denominator cancels like
        # eps |z|^2 further out, which is conditioning, not wrongness
        r = 0.5 + 9.5 * RNG.random(50)
        th = 2 * math.pi * RNG.random(50)
        for z in r * np.exp(1j * th):
            z = complex(z)
            assert spec.domain.contains(z)
            assert geo.gauss_map(spec.data, z) == pytest.approx(z, rel=1e-12)

    def test_helicoid_gauss_map_is_exponential(self):
        data = catalog.get("helicoid").data
        for z in catalog.get("helicoid").domain.sample(50):
            z = complex(z)
            assert geo.gauss_map(data, z) == pytest.approx(np.exp(1j * z), rel=1e-12)

    def test_vertical_point_maps_to_pole(self):
        # datum with f1 - i f2 = 0: Gauss map passes through infinity
        data = NullData((ex.parse("i*z"), ex.parse("z"), ex.parse("0")))
        g = geo.gauss_map(data, 1.0 + 0j)
        assert math.isinf(abs(g))
        np.testing.assert_allclose(geo.stereographic(g), [0.0, 0.0, 1.0])

    def test_stereographic_matches_jet_normal(self):
        for name in ("catenoid", "helicoid", "enneper"):
            spec = catalog.get(name)
            for z in spec.domain.sample(8):
                z = complex(z)
                N1 = geo.stereographic(geo.gauss_map(spec.data, z))
                N2 = geo.unit_normal(geo.jet(spec, z))
                agree = min(
                    float(np.linalg.norm(N1 - N2)), float(np.linalg.norm(N1 + N2))
                )
                assert agree <= 1e-5

    def test_generalized_gauss_map_in_quadric(self):
        data = catalog.get("enneper").data
        zs = catalog.get("enneper").domain.sample(64)
        rep = geo.generalized_gauss_map(data, zs)
        np.testing.assert_allclose(np.linalg.norm(rep, axis=0), 1.0, atol=1e-13)
        assert float(np.max(np.abs(np.sum(rep * rep, axis=0)))) <= 1e-12

    def test_stereographic_south_pole(self):
        np.testing.assert_allclose(geo.stereographic(0j), [0.0, 0.0, -1.0])


class TestCurvature:
    def test_catenoid_curvature_closed_form(self):
        spec = catalog.get("catenoid")
        for _ in range(20):
            z = complex(RNG.uniform(-2, 2), RNG.uniform(-1.2, 1.2))
            v = z.imag
            assert geo.metric_coefficient(spec.data, z) == pytest.approx(
                math.cosh(v) ** 2, rel=1e-12
            )
            assert geo.gauss_curvature(spec.data, z) == pytest.approx(
                -1.0 / math.cosh(v) ** 4, rel=1e-12
            )

    def test_metric_matches_jet(self):
        spec = catalog.get("enneper")
        for z in spec.domain.sample(8):
            z = complex(z)
            j = geo.jet(spec, z)
            lam = geo.metric_coefficient(spec.data, z)
            assert lam == pytest.approx(float(j.X_u @ j.X_u), rel=1e-6)

    def test_principal_curvatures_are_opposite(self):
        spec = catalog.get("enneper")
        for z in spec.domain.sample(16):
            k1, k2 = geo.principal_curvatures(spec.data, complex(z))
            assert k1 == -k2 >= 0
            assert k1 * k2 == pytest.approx(
                geo.gauss_curvature(spec.data, complex(z)), rel=1e-12, abs=1e-15
            )

    def test_curvature_invariant_under_unit_rotation(self):
        data = catalog.get("catenoid-ew").data
        rotated = data.scaled(np.exp(0.7j))
        for z in (1.2 + 0.3j, -2.0 + 1j, 0.5 - 0.8j):
            assert geo.gauss_curvature(rotated, z) == pytest.approx(
                geo.gauss_curvature(data, z), rel=1e-12
            )

    def test_curvature_scaling_law(self):
        # homothety X -> c X divides K by c^2
        data = catalog.get("enneper").data
        c = 2.5
        assert geo.gauss_curvature(data.scaled(c), 0.4 + 0.1j) == pytest.approx(
            geo.gauss_curvature(data, 0.4 + 0.1j) / c**2, rel=1e-12
        )

    def test_plane_is_flat(self):
        data = catalog.get("plane").data
        assert geo.gauss_curvature(data, 0.3 + 0.1j) == 0.0


class TestTotalCurvature:
    def test_annulus_closed_form(self):
        spec = catalog.build_catenoid_ew(inner=0.1, outer=10.0, margin=0.0)
        tc = geo.total_curvature(spec, resolution=192)
        # radial oracle: integrating the spherical density of g = z over
        # r0 < |z| < r1 gives TC = -4 pi [r^2/(1+r^2)]_{r0}^{r1}
        exact = -4 * math.pi * (10.0**2 / (1 + 10.0**2) - 0.1**2 / (1 + 0.1**2))
        assert tc == pytest.approx(exact, rel=1e-3)

    def test_helicoid_discs_strictly_decreasing(self):
        tcs = []
        for R in (1.0, 2.0, 4.0):
            spec = catalog.build_helicoid_disc(radius=R, margin=0.0)
            tcs.append(geo.total_curvature(spec, resolution=128))
        assert tcs[0] > tcs[1] > tcs[2]
        assert all(t < 0 for t in tcs)


class TestPathLength:
    def test_flat_data_gives_euclidean_length(self):
        spec = catalog.get("plane")
        p = PathPolyline((-0.5 + 0j, 0.3 + 0.4j))
        assert geo.path_length(spec, p) == pytest.approx(abs(0.8 + 0.4j), rel=1e-12)

    def test_catenoid_radial_length_closed_form(self):
        # sqrt(lambda) = 1 + 1/r^2 on the positive real axis, so
        # L(a, b) = (b - 1/b) - (a - 1/a)
        spec = catalog.get("catenoid-ew")
        p = PathPolyline((1.0 + 0j, 50.0 + 0j))
        assert geo.path_length(spec, p) == pytest.approx(49.0 - 1 / 50 + 1, rel=1e-10)

    def test_path_through_hole_rejected(self):
        spec = catalog.get("catenoid-ew")
        with pytest.raises(Exception):
            geo.path_length(spec, PathPolyline((-1.0 + 0j, 1.0 + 0j)))
