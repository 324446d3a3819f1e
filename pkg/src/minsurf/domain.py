"""Planar circled domains: an outer disc or rectangle minus round holes.

A hole of radius 0 encodes a puncture.  Every domain owns a homology
basis with one counterclockwise polygonal cycle per hole, and can route
deterministic polyline paths between interior points for use as
integration contours.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import qmc

__all__ = [
    "Disc",
    "Rectangle",
    "Hole",
    "Cycle",
    "PathPolyline",
    "CircledDomain",
    "DomainError",
    "disc",
    "rectangle",
    "annulus",
    "winding_number",
]

CYCLE_VERTICES = 64
ROUTE_RING_VERTICES = 32


class DomainError(Exception):
    """Invalid domain geometry or an impossible routing request."""


@dataclass(frozen=True)
class Disc:
    center: complex
    radius: float


@dataclass(frozen=True)
class Rectangle:
    """Axis-aligned rectangle given by two opposite corners."""

    corner_min: complex
    corner_max: complex


@dataclass(frozen=True)
class Hole:
    center: complex
    radius: float  # 0 encodes a puncture


@dataclass(frozen=True)
class Cycle:
    """Closed counterclockwise polyline; first vertex equals the last."""

    vertices: tuple[complex, ...]

    def winding(self, z: complex) -> int:
        return winding_number(self.vertices, z)

    @property
    def segments(self):
        return list(zip(self.vertices[:-1], self.vertices[1:]))


@dataclass(frozen=True)
class PathPolyline:
    """Open polyline path between two points of the domain."""

    vertices: tuple[complex, ...]

    @property
    def segments(self):
        return list(zip(self.vertices[:-1], self.vertices[1:]))

    @property
    def length(self) -> float:
        return sum(abs(b - a) for a, b in self.segments)


def winding_number(vertices, z: complex) -> int:
    """Exact winding number of a closed polygon around z (crossing count)."""
    wn = 0
    for a, b in zip(vertices[:-1], vertices[1:]):
        if a.imag <= z.imag:
            if b.imag > z.imag and _cross(b - a, z - a) > 0:
                wn += 1
        elif b.imag <= z.imag and _cross(b - a, z - a) < 0:
            wn -= 1
    return wn


def _cross(a: complex, b: complex) -> float:
    return a.real * b.imag - a.imag * b.real


def _point_segment_distance(p: complex, a: complex, b: complex) -> float:
    d = b - a
    L2 = abs(d) ** 2
    if L2 == 0:
        return abs(p - a)
    t = ((p - a).real * d.real + (p - a).imag * d.imag) / L2
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * d))


@dataclass(frozen=True)
class CircledDomain:
    outer: Disc | Rectangle
    holes: tuple[Hole, ...] = ()
    margin: float = 0.0
    _basis: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "holes", tuple(self.holes))
        if self.margin < 0:
            raise DomainError("margin must be nonnegative")
        for h in self.holes:
            if h.radius < 0:
                raise DomainError("hole radius must be nonnegative")
            if self._gap_to_outer(h) <= 0:
                raise DomainError(f"hole at {h.center} not strictly inside the outer boundary")
        for i, hi in enumerate(self.holes):
            for hj in self.holes[i + 1 :]:
                if abs(hi.center - hj.center) - hi.radius - hj.radius <= 0:
                    raise DomainError(f"holes at {hi.center} and {hj.center} are not disjoint")
        gap = self.min_boundary_gap()
        if self.holes and self.margin >= gap / 2:
            raise DomainError(f"margin {self.margin} exceeds half the minimal boundary gap {gap}")

    # -- geometry queries --------------------------------------------------

    def _gap_to_outer(self, h: Hole) -> float:
        if isinstance(self.outer, Disc):
            return self.outer.radius - abs(h.center - self.outer.center) - h.radius
        lo, hi = self.outer.corner_min, self.outer.corner_max
        c = h.center
        edge = min(c.real - lo.real, hi.real - c.real, c.imag - lo.imag, hi.imag - c.imag)
        return edge - h.radius

    def min_boundary_gap(self) -> float:
        gaps = [self._gap_to_outer(h) for h in self.holes]
        for i, hi in enumerate(self.holes):
            for hj in self.holes[i + 1 :]:
                gaps.append(abs(hi.center - hj.center) - hi.radius - hj.radius)
        return min(gaps) if gaps else math.inf

    def _hole_clearance(self, k: int) -> float:
        """Distance from hole k's boundary to the nearest other boundary."""
        h = self.holes[k]
        gaps = [self._gap_to_outer(h)]
        for j, other in enumerate(self.holes):
            if j != k:
                gaps.append(abs(h.center - other.center) - h.radius - other.radius)
        return min(gaps)

    @property
    def diameter(self) -> float:
        if isinstance(self.outer, Disc):
            return 2.0 * self.outer.radius
        return abs(self.outer.corner_max - self.outer.corner_min)

    def bounding_box(self) -> tuple[float, float, float, float]:
        if isinstance(self.outer, Disc):
            c, r = self.outer.center, self.outer.radius
            return c.real - r, c.real + r, c.imag - r, c.imag + r
        lo, hi = self.outer.corner_min, self.outer.corner_max
        return lo.real, hi.real, lo.imag, hi.imag

    def contains(self, z: complex, margin: float | None = None) -> bool:
        """True iff z is interior, at distance >= margin from every boundary.

        ``margin`` defaults to the domain's own; pass 0 for bare geometric
        membership (used by area quadrature).
        """
        m = self.margin if margin is None else margin
        if isinstance(self.outer, Disc):
            if abs(z - self.outer.center) >= self.outer.radius - m:
                return False
        else:
            lo, hi = self.outer.corner_min, self.outer.corner_max
            if not (
                lo.real + m < z.real < hi.real - m and lo.imag + m < z.imag < hi.imag - m
            ):
                return False
        return all(abs(z - h.center) > h.radius + m for h in self.holes)

    def segment_clear(self, a: complex, b: complex) -> bool:
        """True iff the whole segment [a, b] passes :meth:`contains`.

        Exact: the outer constraint region is convex, and clearance from a
        round hole reduces to a point-segment distance.
        """
        if not (self.contains(a) and self.contains(b)):
            return False
        return all(
            _point_segment_distance(h.center, a, b) > h.radius + self.margin
            for h in self.holes
        )

    # -- homology ----------------------------------------------------------

    def homology_basis(self) -> list[Cycle]:
        """One counterclockwise 64-gon per hole, in hole order.

        Ring radius is hole radius + margin + clearance/2, with clearance
        half the distance to the nearest other boundary component; this
        canonical shape keeps quadrature reproducible.
        """
        if not self._basis:
            cycles = []
            for k, h in enumerate(self.holes):
                clearance = self._hole_clearance(k) / 2.0
                radius = h.radius + self.margin + clearance / 2.0
                cycle = self._ring(h.center, radius, CYCLE_VERTICES)
                for v in cycle.vertices:
                    if not self.contains(v):
                        raise DomainError(f"hole at {h.center} cannot be encircled within the margin")
                for s0, s1 in cycle.segments:
                    if not self.segment_clear(s0, s1):
                        raise DomainError(f"hole at {h.center} cannot be encircled within the margin")
                cycles.append(cycle)
            self._basis.extend(cycles)
        return list(self._basis)

    @staticmethod
    def _ring(center: complex, radius: float, count: int) -> Cycle:
        pts = tuple(
            center + radius * complex(math.cos(2 * math.pi * k / count), math.sin(2 * math.pi * k / count))
            for k in range(count)
        )
        return Cycle(pts + (pts[0],))

    # -- routing -----------------------------------------------------------

    def connect(self, z0: complex, z1: complex) -> PathPolyline:
        """Deterministic polyline from z0 to z1 inside the domain.

        Straight segment when clear, otherwise shortest path in a
        visibility graph over hole-offset rings (ties broken by vertex
        order).
        """
        if not self.contains(z0):
            raise DomainError(f"start point {z0} is not in the domain")
        if not self.contains(z1):
            raise DomainError(f"end point {z1} is not in the domain")
        if self.segment_clear(z0, z1):
            return PathPolyline((z0, z1))

        nodes: list[complex] = [z0, z1]
        for k, h in enumerate(self.holes):
            clearance = self._hole_clearance(k) / 2.0
            radius = h.radius + self.margin + clearance / 2.0
            ring = self._ring(h.center, radius, ROUTE_RING_VERTICES)
            nodes.extend(v for v in ring.vertices[:-1] if self.contains(v))

        n = len(nodes)
        adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if self.segment_clear(nodes[i], nodes[j]):
                    w = abs(nodes[i] - nodes[j])
                    adj[i].append((j, w))
                    adj[j].append((i, w))

        # Dijkstra from node 0 to node 1; predecessor chosen by smallest
        # node index on ties for determinism.
        dist = [math.inf] * n
        prev = [-1] * n
        dist[0] = 0.0
        heap = [(0.0, 0)]
        done = [False] * n
        while heap:
            d, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = True
            if u == 1:
                break
            for v, w in adj[u]:
                nd = d + w
                if nd < dist[v] - 1e-15 or (abs(nd - dist[v]) <= 1e-15 and u < prev[v]):
                    dist[v] = nd
                    prev[v] = u
                    heapq.heappush(heap, (nd, v))
        if not done[1]:
            raise DomainError("no route found: margins leave no corridor between the points")
        path = [1]
        while path[-1] != 0:
            path.append(prev[path[-1]])
        return PathPolyline(tuple(nodes[i] for i in reversed(path)))

    # -- sampling ----------------------------------------------------------

    def sample(self, count: int, seed: int | None = None) -> np.ndarray:
        """Low-discrepancy interior points (complex array of length count).

        Unscrambled Halton by default, hence fully reproducible; a seed
        switches to scrambled sampling.
        """
        xmin, xmax, ymin, ymax = self.bounding_box()
        if seed is None:
            engine = qmc.Halton(d=2, scramble=False)
        else:
            engine = qmc.Halton(d=2, scramble=True, seed=seed)
        out: list[complex] = []
        budget = 0
        while len(out) < count:
            block = engine.random(max(256, count))
            budget += len(block)
            for x, y in block:
                z = complex(xmin + (xmax - xmin) * x, ymin + (ymax - ymin) * y)
                if self.contains(z):
                    out.append(z)
                    if len(out) == count:
                        break
            if budget > 10000 * count + 10000:
                raise DomainError("sampling failed: domain measure too small inside margin")
        return np.array(out, dtype=np.complex128)


def disc(center: complex = 0j, radius: float = 1.0, margin: float = 0.0) -> CircledDomain:
    return CircledDomain(Disc(center, radius), (), margin)


def rectangle(corner_min: complex, corner_max: complex, margin: float = 0.0) -> CircledDomain:
    return CircledDomain(Rectangle(corner_min, corner_max), (), margin)


def annulus(
    inner_radius: float,
    outer_radius: float,
    center: complex = 0j,
    margin: float = 0.0,
) -> CircledDomain:
    return CircledDomain(Disc(center, outer_radius), (Hole(center, inner_radius),), margin)
