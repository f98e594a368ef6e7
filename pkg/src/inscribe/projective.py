"""Fractional-linear (Moebius) maps of a parameterized line.

A central projection between two lines, expressed in the lines' segment
parameters, is a Moebius map ``t -> (m00*t + m01) / (m10*t + m11)``.  Chains
of such projections compose by matrix multiplication, and the closed-chain
solutions of the inscription problem are exactly the projective fixed points
of the composition.

Parameters live on the projective line: :class:`ProjParam` stores a
homogeneous pair ``(u, v)`` with ``t = u / v`` so that the point at infinity
(``v = 0``) is a first-class value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CenterOnLine, DegenerateMap, TooManyCoincidences
from .geom import ParamSegment, PlanePoint
from .tol import resolve_eps


@dataclass(frozen=True)
class ProjParam:
    """Homogeneous parameter ``t = u/v`` on a line; ``v = 0`` is infinity."""

    u: float
    v: float

    def __post_init__(self):
        norm = math.hypot(self.u, self.v)
        if norm == 0.0 or not math.isfinite(norm):
            raise ValueError(f"invalid homogeneous pair ({self.u}, {self.v})")
        u, v = float(self.u / norm), float(self.v / norm)
        # Canonical sign: v > 0, or u > 0 on the v = 0 chart boundary.
        if v < 0.0 or (v == 0.0 and u < 0.0):
            u, v = -u, -v
        object.__setattr__(self, "u", u + 0.0)
        object.__setattr__(self, "v", v + 0.0)

    @classmethod
    def from_float(cls, t: float) -> "ProjParam":
        if math.isinf(t):
            return cls(1.0, 0.0)
        return cls(t, 1.0)

    def is_infinite(self, eps=None) -> bool:
        return abs(self.v) <= resolve_eps(eps)

    def to_float(self) -> float:
        """Affine value; ``inf`` when the parameter sits at infinity."""
        if self.v == 0.0:
            return math.inf
        return self.u / self.v


INFINITY = ProjParam(1.0, 0.0)


def chordal(p: ProjParam, q: ProjParam) -> float:
    """Chordal distance ``|u_p v_q - u_q v_p|`` between unit representatives."""
    return abs(p.u * q.v - q.u * p.v)


@dataclass(frozen=True)
class MoebiusMap:
    """A nondegenerate map ``t -> (m00*t + m01) / (m10*t + m11)``.

    Entries are normalized so the entry of largest magnitude equals 1, which
    makes the determinant test and the identity test scale-free.
    """

    m00: float
    m01: float
    m10: float
    m11: float

    def __post_init__(self):
        top = max(abs(self.m00), abs(self.m01), abs(self.m10), abs(self.m11))
        if top == 0.0 or not math.isfinite(top):
            raise DegenerateMap("all matrix entries vanish or are non-finite")
        pick = max(
            (self.m00, self.m01, self.m10, self.m11),
            key=abs,
        )
        for name in ("m00", "m01", "m10", "m11"):
            object.__setattr__(self, name, float(getattr(self, name) / pick))
        if abs(self.det()) <= resolve_eps():
            raise DegenerateMap("fractional-linear map has vanishing determinant")

    def det(self) -> float:
        return self.m00 * self.m11 - self.m01 * self.m10

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1.0, 0.0, 0.0, 1.0)

    def is_identity(self, eps=None) -> bool:
        eps = resolve_eps(eps)
        return (
            abs(self.m01) <= eps
            and abs(self.m10) <= eps
            and abs(self.m00 - self.m11) <= eps
        )


def compose(outer: MoebiusMap, inner: MoebiusMap) -> MoebiusMap:
    """Matrix product; the action applies ``inner`` first, then ``outer``."""
    return MoebiusMap(
        outer.m00 * inner.m00 + outer.m01 * inner.m10,
        outer.m00 * inner.m01 + outer.m01 * inner.m11,
        outer.m10 * inner.m00 + outer.m11 * inner.m10,
        outer.m10 * inner.m01 + outer.m11 * inner.m11,
    )


def inverse(m: MoebiusMap) -> MoebiusMap:
    return MoebiusMap(m.m11, -m.m01, -m.m10, m.m00)


def apply(m: MoebiusMap, t: ProjParam) -> ProjParam:
    """Homogeneous action ``(u, v) -> (m00*u + m01*v, m10*u + m11*v)``."""
    return ProjParam(m.m00 * t.u + m.m01 * t.v, m.m10 * t.u + m.m11 * t.v)


def apply_to_float(m: MoebiusMap, t: float) -> float:
    """Affine action on a float parameter; returns ``inf`` at the pole."""
    if math.isinf(t):
        if m.m10 == 0.0:
            return math.inf
        return m.m00 / m.m10
    den = m.m10 * t + m.m11
    if den == 0.0:
        return math.inf
    return (m.m00 * t + m.m01) / den


def central_projection(
    center: PlanePoint, src: ParamSegment, dst: ParamSegment, eps=None
) -> MoebiusMap:
    """Perspectivity from ``src``'s line to ``dst``'s line through ``center``.

    The map sends the ``src`` parameter of a point ``P`` to the ``dst``
    parameter of ``line(center, P) ∩ dst``, with poles and points at infinity
    handled by the homogeneous representation.
    """
    eps = resolve_eps(eps)
    for seg in (src, dst):
        d = abs(seg.supporting_line().signed_distance(center))
        if d <= eps * max(1.0, seg.length, center.norm()):
            raise CenterOnLine(f"projection center {center} lies on a source/target line")
    ux, uy = src.start.x - center.x, src.start.y - center.y
    dux, duy = src.delta()
    vx, vy = dst.start.x - center.x, dst.start.y - center.y
    dvx, dvy = dst.delta()
    return MoebiusMap(
        -(dux * vy - duy * vx),
        -(ux * vy - uy * vx),
        dux * dvy - duy * dvx,
        ux * dvy - uy * dvx,
    )


@dataclass(frozen=True)
class FixedPointResult:
    """Fixed points of a Moebius map: the identity, or at most two points."""

    kind: str  # "identity" or "finite"
    points: tuple[ProjParam, ...]

    @property
    def is_identity(self) -> bool:
        return self.kind == "identity"


def _real_quadratic_roots(a: float, b: float, c: float, eps: float) -> tuple[float, ...]:
    """Real roots of ``a*t**2 + b*t + c`` with ``|a|`` bounded away from 0."""
    disc = b * b - 4.0 * a * c
    tol = eps * max(b * b, abs(4.0 * a * c), 1e-300)
    if disc < -tol:
        return ()
    if disc <= tol:
        return (-b / (2.0 * a),)
    sq = math.sqrt(disc)
    q = -(b + math.copysign(sq, b)) / 2.0
    if q == 0.0:  # b == 0 and c == 0
        return (0.0, -b / a)
    return (q / a, c / q)


def fixed_points(m: MoebiusMap, eps=None) -> FixedPointResult:
    """Projective fixed points of ``m``.

    A map is either the identity or has at most two fixed points.  The roots
    come from the quadratic ``m10*t**2 + (m11 - m00)*t - m01 = 0``; when
    ``|m10|`` is below tolerance the chart is swapped (``t -> 1/t``) so roots
    at infinity are captured without cancellation.  A double (parabolic) root
    is reported once.
    """
    eps = resolve_eps(eps)
    if m.is_identity(eps):
        return FixedPointResult("identity", ())
    a, b, c = m.m10, m.m11 - m.m00, -m.m01
    scale = max(abs(a), abs(b), abs(c))
    if abs(a) > eps * scale:
        roots = _real_quadratic_roots(a, b, c, eps)
        points = tuple(ProjParam.from_float(t) for t in roots)
    else:
        # Swap chart: w = 1/t turns the quadratic into c*w**2 + b*w + a.
        if abs(c) > eps * scale:
            w_roots = _real_quadratic_roots(c, b, a, eps)
            points = tuple(ProjParam(1.0, w) for w in w_roots)
        else:
            # a and c both vanish: t*(b) = 0 projectively, roots 0 and infinity.
            points = (ProjParam.from_float(0.0), INFINITY)
    return FixedPointResult("finite", points)


def cross_ratio(a: ProjParam, b: ProjParam, c: ProjParam, d: ProjParam, eps=None) -> float:
    """Cross ratio normalized so that ``(0, 1, inf, t) -> t``.

    At least three of the four points must be distinct; the value may be
    ``inf`` when ``d`` coincides with ``c``.
    """
    eps = resolve_eps(eps)
    pts = (a, b, c, d)
    # Count distinct points by clustering coincident pairs.
    labels = [0, 1, 2, 3]
    for i in range(4):
        for j in range(i + 1, 4):
            if chordal(pts[i], pts[j]) <= eps:
                labels[j] = min(labels[j], labels[i])
    if len(set(labels)) < 3:
        raise TooManyCoincidences("cross ratio needs at least three distinct points")

    def x(p: ProjParam, q: ProjParam) -> float:
        return p.u * q.v - q.u * p.v

    num = x(d, a) * x(b, c)
    den = x(d, c) * x(b, a)
    if den == 0.0:
        return math.inf
    return num / den
