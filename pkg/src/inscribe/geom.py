"""Planar primitives with tolerance-aware predicates.

Points, lines, parameterized segments and strictly convex polygons; everything
else in the package is built on these.  All types are immutable values and all
functions are pure, so they are safe to use from any number of threads.

Conventions:

* lines are stored as ``a*x + b*y + c = 0`` with ``a**2 + b**2 == 1``;
* a segment parameter ``t`` maps to ``(1 - t)*start + t*end``; "strictly
  between" means ``t`` in ``[eps, 1 - eps]``;
* collinearity-style cross products are compared against ``eps`` times the
  product of the participating segment lengths, which keeps every predicate
  invariant under similarity transforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    CoincidentPoints,
    DegenerateCevians,
    NotStrictlyConvex,
    OffLine,
    ParallelLines,
    TransversalMiss,
)
from .tol import resolve_eps


@dataclass(frozen=True)
class PlanePoint:
    """A point of the affine plane."""

    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point coordinates ({self.x}, {self.y})")

    def norm(self) -> float:
        return math.hypot(self.x, self.y)


def distance(p: PlanePoint, q: PlanePoint) -> float:
    return math.hypot(p.x - q.x, p.y - q.y)


def midpoint(p: PlanePoint, q: PlanePoint) -> PlanePoint:
    return PlanePoint((p.x + q.x) * 0.5, (p.y + q.y) * 0.5)


@dataclass(frozen=True)
class ProjLine:
    """A finite line ``a*x + b*y + c = 0``, normalized to ``a**2 + b**2 = 1``."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        scale = math.hypot(self.a, self.b)
        if scale <= resolve_eps() * max(1.0, abs(self.c)):
            raise ValueError("degenerate line: (a, b) vanishes (line at infinity)")
        if self.a < 0.0 or (self.a == 0.0 and self.b < 0.0):
            scale = -scale
        object.__setattr__(self, "a", float(self.a / scale) + 0.0)
        object.__setattr__(self, "b", float(self.b / scale) + 0.0)
        object.__setattr__(self, "c", float(self.c / scale) + 0.0)

    def signed_distance(self, p: PlanePoint) -> float:
        """Signed Euclidean distance of ``p`` from the line."""
        return self.a * p.x + self.b * p.y + self.c

    def direction(self) -> tuple[float, float]:
        """A unit vector along the line."""
        return (-self.b, self.a)


@dataclass(frozen=True)
class ParamSegment:
    """A directed segment; parameter ``t`` maps to ``(1 - t)*start + t*end``."""

    start: PlanePoint
    end: PlanePoint

    def __post_init__(self):
        scale = max(1.0, self.start.norm(), self.end.norm())
        if distance(self.start, self.end) <= resolve_eps() * scale:
            raise CoincidentPoints("segment endpoints coincide within tolerance")

    @property
    def length(self) -> float:
        return distance(self.start, self.end)

    def delta(self) -> tuple[float, float]:
        return (self.end.x - self.start.x, self.end.y - self.start.y)

    def point_at(self, t: float) -> PlanePoint:
        dx, dy = self.delta()
        return PlanePoint(self.start.x + t * dx, self.start.y + t * dy)

    def supporting_line(self) -> ProjLine:
        return line_through(self.start, self.end)


def line_through(p: PlanePoint, q: PlanePoint, eps=None) -> ProjLine:
    """The normalized line through two distinct points."""
    eps = resolve_eps(eps)
    if distance(p, q) <= eps * max(1.0, p.norm(), q.norm()):
        raise CoincidentPoints(f"cannot draw a line through coincident points {p} and {q}")
    a = q.y - p.y
    b = p.x - q.x
    c = -(a * p.x + b * p.y)
    return ProjLine(a, b, c)


def intersect_lines(l1: ProjLine, l2: ProjLine, eps=None) -> PlanePoint:
    """Intersection point of two non-parallel lines."""
    eps = resolve_eps(eps)
    det = l1.a * l2.b - l2.a * l1.b
    # Normals are unit vectors, so |det| is the sine of the angle between them.
    if abs(det) <= eps:
        raise ParallelLines("lines are parallel within tolerance")
    x = (l1.b * l2.c - l2.b * l1.c) / det
    y = (l2.a * l1.c - l1.a * l2.c) / det
    return PlanePoint(x, y)


def orientation(p: PlanePoint, q: PlanePoint, r: PlanePoint, eps=None) -> int:
    """Sign of the cross product ``(q - p) x (r - p)``.

    Returns +1 for a counterclockwise turn, -1 for clockwise, and 0 when the
    cross product is below tolerance relative to the two segment lengths.
    """
    eps = resolve_eps(eps)
    cross = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    scale = distance(p, q) * distance(p, r)
    if abs(cross) <= eps * max(scale, 1e-300):
        return 0
    return 1 if cross > 0.0 else -1


def segment_param(p: PlanePoint, seg: ParamSegment, eps=None) -> float:
    """Parameter of ``p`` on the segment's supporting line.

    ``p`` must lie on the line within tolerance; the returned parameter may
    fall outside ``[0, 1]`` (interiority is the caller's concern).
    """
    eps = resolve_eps(eps)
    dx, dy = seg.delta()
    length = seg.length
    rx, ry = p.x - seg.start.x, p.y - seg.start.y
    offset = abs(rx * dy - ry * dx) / length
    if offset > eps * max(1.0, length, math.hypot(rx, ry)):
        raise OffLine(f"point {p} lies {offset:g} off the supporting line")
    return (rx * dx + ry * dy) / (length * length)


def project_to_line(p: PlanePoint, l: ProjLine) -> PlanePoint:
    """Foot of the perpendicular from ``p`` onto ``l``."""
    d = l.signed_distance(p)
    return PlanePoint(p.x - d * l.a, p.y - d * l.b)


def reflect_point(p: PlanePoint, l: ProjLine) -> PlanePoint:
    """Mirror image of ``p`` across ``l``; an involution."""
    d = l.signed_distance(p)
    return PlanePoint(p.x - 2.0 * d * l.a, p.y - 2.0 * d * l.b)


@dataclass(frozen=True)
class ConvexPolygon:
    """A strictly convex polygon with counterclockwise vertex order."""

    vertices: tuple[PlanePoint, ...]

    def __init__(self, vertices):
        object.__setattr__(self, "vertices", tuple(vertices))
        self._check()

    def _check(self):
        n = len(self.vertices)
        if n < 3:
            raise NotStrictlyConvex(f"polygon requires n >= 3 vertices, got {n}")
        eps = resolve_eps()
        for i in range(n):
            p, q = self.vertices[i], self.vertices[(i + 1) % n]
            if distance(p, q) <= eps * max(1.0, p.norm(), q.norm()):
                raise NotStrictlyConvex(f"consecutive vertices {i} and {(i + 1) % n} coincide")
        for i in range(n):
            p = self.vertices[i]
            q = self.vertices[(i + 1) % n]
            r = self.vertices[(i + 2) % n]
            if orientation(p, q, r) != 1:
                raise NotStrictlyConvex(
                    f"vertex triple ({i}, {(i + 1) % n}, {(i + 2) % n}) is not strictly counterclockwise"
                )

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex(self, i: int) -> PlanePoint:
        return self.vertices[i % self.n]

    def side(self, i: int) -> ParamSegment:
        """Side ``i``, directed from vertex ``i`` to vertex ``i + 1``."""
        return ParamSegment(self.vertex(i), self.vertex(i + 1))

    def side_line(self, i: int) -> ProjLine:
        return line_through(self.vertex(i), self.vertex(i + 1))

    def centroid(self) -> PlanePoint:
        n = self.n
        return PlanePoint(
            sum(v.x for v in self.vertices) / n,
            sum(v.y for v in self.vertices) / n,
        )

    def scale(self) -> float:
        return max(1.0, max(v.norm() for v in self.vertices))

    def contains_strict(self, p: PlanePoint, eps=None) -> bool:
        """True when ``p`` is strictly inside (off every side line)."""
        eps = resolve_eps(eps)
        for i in range(self.n):
            a, b = self.vertex(i), self.vertex(i + 1)
            cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)
            if cross <= eps * distance(a, b) * max(1.0, distance(a, p)):
                return False
        return True


def cevian_transversal_ratios(
    tri: tuple[PlanePoint, PlanePoint, PlanePoint],
    d_on_ac: PlanePoint,
    e_on_ab: PlanePoint,
    transversal: ProjLine,
    eps=None,
) -> tuple[float, float]:
    """Ratios ``(|BF|/|FE|, |DH|/|HC|)`` of the cevian transversal configuration.

    ``tri = (A, B, C)``.  ``D`` must be strictly interior to side ``AC`` and
    ``E`` strictly interior to ``AB``; the cevians ``BD`` and ``CE`` meet at an
    interior point ``G``.  The transversal is a line through ``G`` that cuts
    the open segments ``BE`` at ``F`` and ``CD`` at ``H``.  The first ratio
    always exceeds the second strictly; the caller checks that property, the
    function only computes both values.
    """
    eps = resolve_eps(eps)
    a, b, c = tri
    t_d = segment_param(d_on_ac, ParamSegment(a, c), eps)
    t_e = segment_param(e_on_ab, ParamSegment(a, b), eps)
    if not (eps <= t_d <= 1.0 - eps):
        raise TransversalMiss("D is not strictly interior to side AC")
    if not (eps <= t_e <= 1.0 - eps):
        raise TransversalMiss("E is not strictly interior to side AB")
    try:
        cev_bd = line_through(b, d_on_ac, eps)
        cev_ce = line_through(c, e_on_ab, eps)
        intersect_lines(cev_bd, cev_ce, eps)
    except ParallelLines as exc:
        raise DegenerateCevians("cevians BD and CE are parallel") from exc

    def _cut(seg: ParamSegment) -> PlanePoint:
        try:
            hit = intersect_lines(transversal, seg.supporting_line(), eps)
        except ParallelLines as exc:
            raise TransversalMiss("transversal is parallel to a target segment") from exc
        t = segment_param(hit, seg, eps)
        if not (eps <= t <= 1.0 - eps):
            raise TransversalMiss("transversal misses the open segment")
        return hit

    f = _cut(ParamSegment(b, e_on_ab))
    h = _cut(ParamSegment(d_on_ac, c))
    lhs = distance(b, f) / distance(f, e_on_ab)
    rhs = distance(d_on_ac, h) / distance(h, c)
    return lhs, rhs
