"""Circled domains: membership, homology basis, routing, sampling."""

import numpy as np
import pytest

from minsurf.domain import (
    CircledDomain,
    Cycle,
    Disc,
    DomainError,
    Hole,
    PathPolyline,
    Rectangle,
    annulus,
    disc,
    rectangle,
    winding_number,
)


class TestConstruction:
    def test_hole_must_be_inside(self):
        with pytest.raises(DomainError):
            CircledDomain(Disc(0j, 1.0), (Hole(2 + 0j, 0.1),))

    def test_holes_must_be_disjoint(self):
        with pytest.raises(DomainError):
            CircledDomain(Disc(0j, 5.0), (Hole(0j, 1.0), Hole(1.5 + 0j, 1.0)))

    def test_margin_bounded_by_gap(self):
        with pytest.raises(DomainError):
            annulus(0.9, 1.0, margin=0.06)

    def test_puncture_is_zero_radius_hole(self):
        d = CircledDomain(Disc(0j, 1.0), (Hole(0.5 + 0j, 0.0),))
        assert not d.contains(0.5 + 0j)
        assert d.contains(0.4 + 0j)


class TestContainment:
    def test_disc_membership(self):
        d = disc(1 + 1j, 2.0, margin=0.1)
        assert d.contains(1 + 1j)
        assert d.contains(2.8 + 1j)
        assert not d.contains(2.95 + 1j)  # inside disc but within margin
        assert not d.contains(4 + 1j)

    def test_rectangle_membership(self):
        d = rectangle(-1 - 1j, 1 + 1j, margin=0.1)
        assert d.contains(0j)
        assert not d.contains(0.95 + 0j)
        assert d.contains(0.85 + 0.85j)

    def test_margin_override(self):
        d = disc(0j, 1.0, margin=0.2)
        assert not d.contains(0.9 + 0j)
        assert d.contains(0.9 + 0j, margin=0.0)

    def test_segment_clear_grazing_hole(self):
        d = annulus(0.5, 3.0)
        # chord passing within the hole radius of the center
        assert not d.segment_clear(-2 + 0.1j, 2 + 0.1j)
        assert d.segment_clear(-2 + 1j, 2 + 1j)
        assert d.segment_clear(1 + 0j, 2 + 0j)


class TestWinding:
    def test_circle_windings(self):
        th = np.linspace(0, 2 * np.pi, 65)
        circle = tuple(np.exp(1j * th))
        assert winding_number(circle, 0j) == 1
        assert winding_number(circle, 2 + 0j) == 0
        assert winding_number(circle[::-1], 0j) == -1

    def test_basis_cycles_wind_once_around_their_hole(self):
        dom = CircledDomain(
            Disc(0j, 10.0), (Hole(-3 + 0j, 0.5), Hole(3 + 1j, 0.8)), margin=0.05
        )
        cycles = dom.homology_basis()
        assert len(cycles) == 2
        for k, c in enumerate(cycles):
            for j, h in enumerate(dom.holes):
                assert winding_number(c.vertices, h.center) == (1 if j == k else 0)

    def test_basis_cycles_stay_in_domain(self):
        dom = CircledDomain(
            Disc(0j, 10.0), (Hole(-3 + 0j, 0.5), Hole(3 + 1j, 0.8)), margin=0.05
        )
        for c in dom.homology_basis():
            vs = c.vertices
            for a, b in zip(vs, vs[1:]):
                assert dom.segment_clear(a, b)

    def test_simply_connected_domain_has_empty_basis(self):
        assert disc(0j, 1.0).homology_basis() == []
        assert rectangle(0j, 1 + 1j).homology_basis() == []


class TestRouting:
    def test_connect_straight_when_clear(self):
        d = disc(0j, 2.0, margin=0.01)
        p = d.connect(-1 + 0j, 1 + 0j)
        assert len(p.vertices) == 2

    def test_connect_detours_around_hole(self):
        d = annulus(0.5, 3.0, margin=0.01)
        p = d.connect(-2 + 0j, 2 + 0j)
        assert len(p.vertices) > 2
        for a, b in zip(p.vertices, p.vertices[1:]):
            assert d.segment_clear(a, b)

    def test_connect_path_stays_inside_at_fine_sampling(self):
        dom = CircledDomain(
            Disc(0j, 5.0), (Hole(0j, 0.8), Hole(2.5 + 0j, 0.4)), margin=0.02
        )
        p = dom.connect(-4 + 0j, 4 + 0.5j)
        for a, b in zip(p.vertices, p.vertices[1:]):
            ts = np.linspace(0, 1, 1000)
            pts = a + ts * (b - a)
            assert all(dom.contains(complex(q), margin=0.0) for q in pts)

    def test_connect_is_deterministic(self):
        dom = annulus(0.5, 3.0, margin=0.01)
        p1 = dom.connect(-2 + 0j, 2 + 0j)
        p2 = dom.connect(-2 + 0j, 2 + 0j)
        assert p1.vertices == p2.vertices

    def test_connect_rejects_outside_endpoints(self):
        d = disc(0j, 1.0)
        with pytest.raises(DomainError):
            d.connect(0j, 3 + 0j)


class TestSampling:
    def test_samples_lie_inside(self):
        dom = CircledDomain(Disc(0j, 3.0), (Hole(1 + 0j, 0.5),), margin=0.05)
        zs = dom.sample(512)
        assert len(zs) == 512
        assert all(dom.contains(complex(z)) for z in zs)

    def test_sampling_is_deterministic_without_seed(self):
        dom = disc(0j, 2.0, margin=0.01)
        np.testing.assert_array_equal(dom.sample(128), dom.sample(128))

    def test_seeded_sampling_reproducible_and_distinct(self):
        dom = disc(0j, 2.0, margin=0.01)
        a, b = dom.sample(128, seed=7), dom.sample(128, seed=7)
        np.testing.assert_array_equal(a, b)
        assert not np.array_equal(a, dom.sample(128, seed=8))

    def test_rectangle_sampling_covers_quadrants(self):
        dom = rectangle(-1 - 1j, 1 + 1j, margin=0.01)
        zs = dom.sample(1024)
        for sx in (-1, 1):
            for sy in (-1, 1):
                assert np.any((np.sign(zs.real) == sx) & (np.sign(zs.imag) == sy))


def test_path_and_cycle_lengths():
    p = PathPolyline((0j, 1 + 0j, 1 + 1j))
    assert p.length == pytest.approx(2.0)
    sq = Cycle((0j, 1 + 0j, 1 + 1j, 1j, 0j))
    assert sq.winding(0.5 + 0.5j) == 1
    assert sq.winding(2 + 0j) == 0
    assert len(sq.segments) == 4
