"""Closed-form families on regular polygons, and their ruler-compass trace.

For a regular polygon of side ``2a`` with center ``O`` and side midpoints
``E_i``, placing ``B_i`` at distance ``x`` from ``A_i`` puts the intersection
``C_i`` of ``O E_i`` with ``B_i B_{i+1}`` at height

    h(x) = x (a - x) sin(2 pi / n) / (2 a - 2 x sin^2(pi / n))

above ``E_i``.  The two parameters ``x = a/2`` and ``x = a / (1 + cos^2(pi/n))``
give the same height, and together with their mirror images across the lines
``O E_i`` they form four polygons through one and the same inner polygon.
The module generates that family, the general unit-side split family, and
executes the straightedge-and-compass construction of the second parameter,
returning every intermediate point for verification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    DomainError,
    NoRealRoots,
    RootsOutOfRange,
    SingularDenominator,
)
from .geom import (
    ConvexPolygon,
    ParamSegment,
    PlanePoint,
    distance,
    intersect_lines,
    line_through,
    midpoint,
    project_to_line,
)
from .tol import resolve_eps


@dataclass(frozen=True)
class RegularGonSpec:
    """A regular ``n``-gon of side ``2a``: center, and a rotation phase.

    With ``phase = 0`` the first side is horizontal at the bottom and the
    vertices run counterclockwise.
    """

    n: int
    a: float = 1.0
    center: PlanePoint = PlanePoint(0.0, 0.0)
    phase: float = 0.0

    def __post_init__(self):
        if self.n < 3:
            raise DomainError(f"regular polygon needs n >= 3, got {self.n}")
        if not self.a > 0.0:
            raise DomainError(f"half-side length must be positive, got {self.a}")

    @property
    def circumradius(self) -> float:
        return self.a / math.sin(math.pi / self.n)

    def vertex(self, j: int) -> PlanePoint:
        angle = -math.pi / 2.0 - math.pi / self.n + self.phase + 2.0 * math.pi * j / self.n
        r = self.circumradius
        return PlanePoint(
            self.center.x + r * math.cos(angle),
            self.center.y + r * math.sin(angle),
        )

    def polygon(self) -> ConvexPolygon:
        return ConvexPolygon([self.vertex(j) for j in range(self.n)])


def inner_height(n: int, a: float, x: float) -> float:
    """Height of the inner point above the side midpoint, side length ``2a``."""
    if n < 3:
        raise DomainError(f"n must be at least 3, got {n}")
    if not (0.0 < x < a):
        raise DomainError(f"x must lie strictly between 0 and a={a}, got {x}")
    s2 = math.sin(math.pi / n) ** 2
    return x * (a - x) * math.sin(2.0 * math.pi / n) / (2.0 * a - 2.0 * x * s2)


def equal_height_pair(n: int, a: float) -> tuple[float, float]:
    """The two distinguished parameters ``a/2`` and ``a/(1 + cos^2(pi/n))``."""
    return a / 2.0, a / (1.0 + math.cos(math.pi / n) ** 2)


def shared_height(n: int, a: float) -> float:
    """The common height of the pair: ``a sin(2 pi/n) / (4 (1 + cos^2(pi/n)))``."""
    return a * math.sin(2.0 * math.pi / n) / (4.0 * (1.0 + math.cos(math.pi / n) ** 2))


@dataclass(frozen=True)
class RegularFamily:
    """The four-polygon family on a regular polygon.

    ``polygons`` holds the vertex lists of the two distinguished inscribed
    polygons and their mirror images; ``params`` the corresponding side
    parameters, and ``shifts`` the index shift class each one solves.
    """

    spec: RegularGonSpec
    A: ConvexPolygon
    C: tuple[PlanePoint, ...]
    x_values: tuple[float, float]
    polygons: tuple[tuple[PlanePoint, ...], ...]
    params: tuple[tuple[float, ...], ...]
    shifts: tuple[int, ...]


def make_regular_instance(spec: RegularGonSpec) -> RegularFamily:
    """Construct the regular instance together with its four known solutions.

    ``C_i`` is computed geometrically as the intersection of ``O E_i`` with
    the side ``B_i B_{i+1}`` of the first distinguished polygon; the incidence
    of all four polygons with every ``C_i`` is verified before returning.
    """
    n, a = spec.n, spec.a
    A = spec.polygon()
    o = spec.center
    x1, x2 = equal_height_pair(n, a)
    t_values = (x1 / (2.0 * a), x2 / (2.0 * a))

    def inscribed(t: float) -> tuple[PlanePoint, ...]:
        return tuple(A.side(i).point_at(t) for i in range(n))

    b_first = inscribed(t_values[0])
    mids = [midpoint(A.vertex(i), A.vertex(i + 1)) for i in range(n)]
    C = tuple(
        intersect_lines(
            line_through(o, mids[i]),
            line_through(b_first[i], b_first[(i + 1) % n]),
        )
        for i in range(n)
    )

    polygons = (
        b_first,
        inscribed(t_values[1]),
        inscribed(1.0 - t_values[0]),
        inscribed(1.0 - t_values[1]),
    )
    params = (
        (t_values[0],) * n,
        (t_values[1],) * n,
        (1.0 - t_values[0],) * n,
        (1.0 - t_values[1],) * n,
    )
    shifts = (0, 0, n - 1, n - 1)

    tol = 1e-9 * max(1.0, spec.circumradius + o.norm())
    for poly, shift in zip(polygons, shifts):
        for i in range(n):
            side = line_through(poly[(shift + i) % n], poly[(shift + i + 1) % n])
            if abs(side.signed_distance(C[i])) > tol:
                raise AssertionError("generated polygon misses an inner point")
    return RegularFamily(spec, A, C, (x1, x2), polygons, params, shifts)


# ---------------------------------------------------------------------------
# Unit-side split family
# ---------------------------------------------------------------------------


def split_height(n: int, a: float, x: float) -> float:
    """Inner-point height for unit side length and perpendicular foot ``a``."""
    if n < 3:
        raise DomainError(f"n must be at least 3, got {n}")
    if not (0.0 < x < a):
        raise DomainError(f"x must lie strictly between 0 and a={a}, got {x}")
    den = 1.0 - 2.0 * x * math.sin(math.pi / n) ** 2
    if abs(den) <= resolve_eps():
        raise SingularDenominator(f"height denominator vanishes at x={x}")
    return x * (a - x) * math.sin(2.0 * math.pi / n) / den


def conjugate_foot_split(n: int, a: float, x: float) -> float:
    """The second split ``y`` with the same height: ``(a-x)/(1-2x sin^2(pi/n))``."""
    if n < 3:
        raise DomainError(f"n must be at least 3, got {n}")
    den = 1.0 - 2.0 * x * math.sin(math.pi / n) ** 2
    if abs(den) <= resolve_eps():
        raise SingularDenominator(f"conjugate denominator vanishes at x={x}")
    return (a - x) / den


def matching_far_splits(n: int, a: float, x: float, eps=None) -> tuple[float, float]:
    """Splits ``(z, t)`` on the far part with the same height as ``x``.

    Solves ``h(1-a, u) = h(a, x)`` for ``u``; that is the quadratic
    ``S u^2 - ((1-a) S + 2 h s) u + h = 0`` with ``S = sin(2 pi/n)`` and
    ``s = sin^2(pi/n)``.  Raises when the roots are complex or fall outside
    the open interval ``(0, 1-a)``.
    """
    eps = resolve_eps(eps)
    h = split_height(n, a, x)
    s_big = math.sin(2.0 * math.pi / n)
    s2 = math.sin(math.pi / n) ** 2
    qa = s_big
    qb = -((1.0 - a) * s_big + 2.0 * h * s2)
    qc = h
    disc = qb * qb - 4.0 * qa * qc
    if disc < -eps * max(qb * qb, abs(4.0 * qa * qc)):
        raise NoRealRoots(f"no real far splits for x={x}")
    disc = max(disc, 0.0)
    sq = math.sqrt(disc)
    q = -(qb + math.copysign(sq, qb)) / 2.0
    roots = sorted((q / qa, qc / q) if q != 0.0 else (0.0, -qb / qa))
    lo, hi = roots
    if not (eps < lo and hi < 1.0 - a - eps):
        raise RootsOutOfRange(f"far splits {roots} fall outside (0, {1.0 - a})")
    return lo, hi


@dataclass(frozen=True)
class SplitQuadruple:
    """A complete split family ``(x, y, z, t)`` with equal heights."""

    n: int
    a: float
    x: float
    y: float
    z: float
    t: float


def make_split_quadruple(n: int, a: float, x: float) -> SplitQuadruple:
    """Build and verify the full quadruple for unit side length."""
    if not (0.0 < a < 1.0):
        raise DomainError(f"foot distance must be in (0, 1), got {a}")
    y = conjugate_foot_split(n, a, x)
    if not (0.0 < y < a):
        raise RootsOutOfRange(f"conjugate split {y} falls outside (0, {a})")
    z, t = matching_far_splits(n, a, x)
    h = split_height(n, a, x)
    for value in (split_height(n, a, y), split_height(n, 1.0 - a, z), split_height(n, 1.0 - a, t)):
        if abs(value - h) > 1e-10 * max(1.0, abs(h)):
            raise AssertionError("split heights disagree beyond tolerance")
    return SplitQuadruple(n, a, x, y, z, t)


def mixed_gon_compatible(n: int, m: int, x: float, y: float, z: float, t: float, eps=None) -> bool:
    """Whether one quadruple can serve regular ``n``- and ``m``-gons at once.

    Evaluates ``x + y + z + t - 2 (x y + z t) sin^2(pi/k) = 1`` for both
    ``k = n`` and ``k = m``; simultaneous equality forces
    ``(x y + z t)(sin^2(pi/n) - sin^2(pi/m)) = 0``, impossible for interior
    splits with ``n != m``.
    """
    if n == m:
        raise ValueError("n and m must differ")
    if min(n, m) < 3:
        raise DomainError("both polygon orders must be at least 3")
    eps = resolve_eps(eps)

    def holds(k: int) -> bool:
        value = x + y + z + t - 2.0 * (x * y + z * t) * math.sin(math.pi / k) ** 2
        return abs(value - 1.0) <= max(eps, 1e-9)

    return holds(n) and holds(m)


# ---------------------------------------------------------------------------
# Straightedge-and-compass construction of the second parameter
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConstructionTrace:
    """Every intermediate point of the five-step compass construction."""

    n: int
    a: float
    center: PlanePoint
    a0: PlanePoint
    a1: PlanePoint
    a2: PlanePoint
    e: PlanePoint  # midpoint of side a0 a1
    foot_c: PlanePoint  # foot of the perpendicular from e onto line(center, a0)
    foot_d: PlanePoint  # foot of the perpendicular from foot_c onto side a0 a1
    g: PlanePoint  # circle(a1, |a1 e|) meets line(a2, a1) outside the segment
    f: PlanePoint  # parallel to foot_d->g through e, meeting line(a2, a1)
    b: PlanePoint  # the constructed point on side a0 a1
    x: float  # |a0 b|


def compass_construction(n: int, a: float = 1.0) -> ConstructionTrace:
    """Execute the five construction steps on a regular ``n``-gon.

    The final point satisfies ``|A_0 B| = a / (1 + cos^2(pi/n))`` exactly (up
    to roundoff).  ``n = 4`` is excluded: there ``x = 2a/3`` and the point is
    constructed directly as a third of the side.
    """
    if n < 3:
        raise DomainError(f"n must be at least 3, got {n}")
    if n == 4:
        raise DomainError("n = 4 has x = 2a/3; construct the third directly")
    spec = RegularGonSpec(n, a)
    a0, a1, a2 = spec.vertex(0), spec.vertex(1), spec.vertex(2)
    o = spec.center
    e = midpoint(a0, a1)

    foot_c = project_to_line(e, line_through(o, a0))
    foot_d = project_to_line(foot_c, line_through(a0, a1))

    # Circle about a1 through e meets line(a2, a1) at distance a from a1;
    # the admissible point lies outside segment a2 a1, i.e. at negative
    # parameter from a1 away from a2.
    seg_a1_a2 = ParamSegment(a1, a2)
    radius = distance(a1, e)
    g = seg_a1_a2.point_at(-radius / seg_a1_a2.length)

    dgx, dgy = g.x - foot_d.x, g.y - foot_d.y
    parallel = line_through(e, PlanePoint(e.x + dgx, e.y + dgy))
    f = intersect_lines(parallel, line_through(a2, a1))

    radius_b = distance(a1, f)
    side = ParamSegment(a0, a1)
    b = side.point_at(radius_b / side.length)
    return ConstructionTrace(
        n=n, a=a, center=o, a0=a0, a1=a1, a2=a2,
        e=e, foot_c=foot_c, foot_d=foot_d, g=g, f=f, b=b,
        x=distance(a0, b),
    )


def conjugate_split(n: int, a: float, x0: float) -> float:
    """The second root ``x1`` of ``h(x) = h(x0)`` for side length ``2a``.

    By Vieta the product of the two roots is ``2 a h(x0) / sin(2 pi/n)``, so
    the companion of ``x0`` follows without solving the quadratic.  At the
    self-conjugate parameter ``a / (1 + cos(pi/n))`` the root is ``x0`` itself.
    """
    if not (0.0 < x0 < a):
        raise DomainError(f"x0 must lie strictly between 0 and a={a}, got {x0}")
    h0 = inner_height(n, a, x0)
    return 2.0 * a * h0 / (math.sin(2.0 * math.pi / n) * x0)
