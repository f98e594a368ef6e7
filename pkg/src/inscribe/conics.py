"""Conics: five-point fitting, line intersection, and chain loci.

The locus machinery implements the classical conic-generation picture: fix
``n`` lines and ``n`` points, slide a point ``B_0`` along the first line, and
propagate ``B_{i+1} = line(center_i, B_i) ∩ line_{i+1}`` around the chain.
The intersection of the first and last chord lines then sweeps out a conic
through the first and last centers.  Intersecting that conic with the start
line recovers the closed-chain solutions, which gives an independent
cross-check of the fixed-point solver: a line meets a conic in at most two
points, hence at most two solutions per shift.

Pascal and Desargues incidence predicates are evaluated in homogeneous
coordinates so that intersections at infinity are first-class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    CoincidentPoints,
    DegenerateChain,
    LineOnConic,
    NotPerspective,
    OffLine,
    ParallelLines,
    PointsNotOnConic,
    RankDeficient,
)
from .geom import (
    ConvexPolygon,
    ParamSegment,
    PlanePoint,
    ProjLine,
    distance,
    intersect_lines,
    line_through,
    segment_param,
)
from .solver import PolygonInstance, SolutionPolygon, candidate_from_seed, line_carrier
from .tol import resolve_eps


@dataclass(frozen=True)
class Conic:
    """``a x^2 + b xy + c y^2 + d x + e y + f = 0`` with a unit coefficient vector."""

    a: float
    b: float
    c: float
    d: float
    e: float
    f: float

    def __post_init__(self):
        vec = np.array([self.a, self.b, self.c, self.d, self.e, self.f], dtype=float)
        norm = float(np.linalg.norm(vec))
        if norm == 0.0 or not math.isfinite(norm):
            raise ValueError("conic coefficient vector vanishes")
        vec /= norm
        # Canonical sign: make the first coefficient of largest magnitude positive.
        lead = vec[int(np.argmax(np.abs(vec)))]
        if lead < 0.0:
            vec = -vec
        for name, value in zip("abcdef", vec):
            object.__setattr__(self, name, float(value))

    def coefficients(self) -> tuple[float, ...]:
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    def matrix(self) -> np.ndarray:
        """The symmetric 3x3 matrix of the quadratic form."""
        a, b, c, d, e, f = self.coefficients()
        return np.array(
            [
                [a, b / 2.0, d / 2.0],
                [b / 2.0, c, e / 2.0],
                [d / 2.0, e / 2.0, f],
            ]
        )

    def is_degenerate(self, eps=None) -> bool:
        """Rank of the 3x3 matrix below 3: the conic splits into lines."""
        eps = resolve_eps(eps)
        return abs(float(np.linalg.det(self.matrix()))) <= eps

    def evaluate(self, p: PlanePoint) -> float:
        return (
            self.a * p.x * p.x
            + self.b * p.x * p.y
            + self.c * p.y * p.y
            + self.d * p.x
            + self.e * p.y
            + self.f
        )

    def residual_at(self, p: PlanePoint) -> float:
        """|Q(p)| normalized by the monomial vector's norm (scale-free)."""
        mono = math.sqrt(
            p.x**4 + (p.x * p.y) ** 2 + p.y**4 + p.x**2 + p.y**2 + 1.0
        )
        return abs(self.evaluate(p)) / mono


def conic_agreement(c1: Conic, c2: Conic) -> float:
    """Max coefficient difference after unit normalization, up to sign."""
    v1 = np.array(c1.coefficients())
    v2 = np.array(c2.coefficients())
    return float(min(np.max(np.abs(v1 - v2)), np.max(np.abs(v1 + v2))))


def conic_through_points(points, eps=None) -> Conic:
    """The unique conic through five points.

    The coefficient vector is the null vector of the 5x6 incidence matrix,
    computed through an SVD with column scaling.  When the second-smallest
    singular value also collapses (ratio below 1e-8), the points fail to pin
    down a unique conic and :class:`RankDeficient` is raised.
    """
    eps = resolve_eps(eps)
    pts = list(points)
    if len(pts) != 5:
        raise ValueError(f"need exactly 5 points, got {len(pts)}")
    scale = max(1.0, max(p.norm() for p in pts))
    for i in range(5):
        for j in range(i + 1, 5):
            if distance(pts[i], pts[j]) <= eps * scale:
                raise CoincidentPoints(f"points {i} and {j} coincide within tolerance")
    rows = np.array(
        [[p.x * p.x, p.x * p.y, p.y * p.y, p.x, p.y, 1.0] for p in pts]
    )
    col_scale = np.max(np.abs(rows), axis=0)
    col_scale[col_scale == 0.0] = 1.0
    _, sing, vh = np.linalg.svd(rows / col_scale)
    if sing[-1] <= 1e-8 * sing[0]:
        raise RankDeficient("five points do not determine a unique conic")
    coef = vh[-1] / col_scale
    return Conic(*coef)


def conic_line_intersections(conic: Conic, line: ProjLine, eps=None) -> tuple[PlanePoint, ...]:
    """Intersection points of a conic with a line: zero, one, or two.

    A vanishing discriminant (within tolerance) is a tangency and yields one
    point.  If the restriction of the conic to the line vanishes identically
    the line is a component and :class:`LineOnConic` is raised.
    """
    eps = resolve_eps(eps)
    carrier = line_carrier(line)
    x0, y0 = carrier.start.x, carrier.start.y
    dx, dy = carrier.delta()
    qa = conic.a * dx * dx + conic.b * dx * dy + conic.c * dy * dy
    qb = (
        2.0 * conic.a * x0 * dx
        + conic.b * (x0 * dy + y0 * dx)
        + 2.0 * conic.c * y0 * dy
        + conic.d * dx
        + conic.e * dy
    )
    qc = conic.evaluate(carrier.start)
    top = max(abs(qa), abs(qb), abs(qc))
    if top <= eps * max(1.0, x0 * x0 + y0 * y0):
        raise LineOnConic("line is a component of the (degenerate) conic")
    if abs(qa) <= eps * top:
        if abs(qb) <= eps * top:
            return ()
        return (carrier.point_at(-qc / qb),)
    disc = qb * qb - 4.0 * qa * qc
    tol = eps * max(qb * qb, abs(4.0 * qa * qc), 1e-300)
    if disc < -tol:
        return ()
    if disc <= tol:
        return (carrier.point_at(-qb / (2.0 * qa)),)
    sq = math.sqrt(disc)
    q = -(qb + math.copysign(sq, qb)) / 2.0
    t1, t2 = q / qa, qc / q
    return (carrier.point_at(t1), carrier.point_at(t2))


# ---------------------------------------------------------------------------
# Chain loci
# ---------------------------------------------------------------------------


def locus_samples(carriers, centers, samples: int = 20, eps=None) -> list[PlanePoint]:
    """Sample the locus of the first/last chord intersection of a chain.

    ``carriers[i]`` parameterizes line ``i`` and ``centers[i]`` is the point
    the chord ``B_i B_{i+1}`` must pass through.  For each start parameter the
    chain is propagated geometrically and the intersection
    ``X = line(centers[0], B_0) ∩ line(centers[-1], B_{n-1})`` is recorded;
    samples where any step degenerates (parallel lines, a vertex hitting a
    center) are skipped.  Raises :class:`DegenerateChain` when fewer than five
    samples survive.
    """
    eps = resolve_eps(eps)
    carriers = list(carriers)
    centers = list(centers)
    n = len(carriers)
    if n < 3 or len(centers) != n:
        raise ValueError("need n >= 3 carriers and exactly n centers")
    if samples < 7:
        raise ValueError("need at least 7 sweep samples")

    # Full projective sweep: uniform angles on the parameter line traverse
    # the locus conic once, so the samples cover it instead of a short arc.
    theta = -math.pi / 2.0 + math.pi * (np.arange(samples) + 0.5) / samples
    angles = list(theta)
    # The locus meets the first and last centers at computable sweep
    # parameters; bracketing those passes pins the fit where the
    # endpoint-membership property lives instead of extrapolating to it.
    for t_star in _center_pass_params(carriers, centers, eps):
        base = math.atan(t_star)
        for off in (-0.05, -0.01, 0.01, 0.05):
            angles.append(base + off)

    out: list[PlanePoint] = []
    for ang in angles:
        t0 = math.tan(ang)
        try:
            b = carriers[0].point_at(t0)
            first_chord = line_through(centers[0], b, eps)
            current = b
            for i in range(1, n):
                chord = line_through(centers[i - 1], current, eps)
                current = intersect_lines(chord, carriers[i].supporting_line(), eps)
            last_chord = line_through(centers[-1], current, eps)
            x = intersect_lines(first_chord, last_chord, eps)
        except (ParallelLines, CoincidentPoints, ValueError):
            continue
        # Coincident repeats (a pinched chain) carry no fitting information.
        if any(distance(x, seen) <= 1e-9 * max(1.0, x.norm()) for seen in out):
            continue
        out.append(x)
    if len(out) < 5:
        raise DegenerateChain(f"only {len(out)} usable locus samples")
    return out


def _center_pass_params(carriers, centers, eps) -> list[float]:
    """Sweep parameters where the locus crosses the first and last centers.

    ``X = centers[-1]`` exactly when ``B_0`` sits on the line joining the two
    centers; ``X = centers[0]`` when ``B_{n-1}`` does, which back-propagates
    through the chain to a start parameter.  Degenerate configurations simply
    contribute nothing.
    """
    n = len(carriers)
    params: list[float] = []
    try:
        join = line_through(centers[0], centers[-1], eps)
    except CoincidentPoints:
        return params
    try:
        b0 = intersect_lines(join, carriers[0].supporting_line(), eps)
        params.append(segment_param(b0, carriers[0], math.sqrt(eps)))
    except (ParallelLines, OffLine):
        pass
    try:
        current = intersect_lines(join, carriers[n - 1].supporting_line(), eps)
        for i in range(n - 2, -1, -1):
            chord = line_through(centers[i], current, eps)
            current = intersect_lines(chord, carriers[i].supporting_line(), eps)
        params.append(segment_param(current, carriers[0], math.sqrt(eps)))
    except (ParallelLines, CoincidentPoints, OffLine):
        pass
    return params


def side_chain(A: ConvexPolygon, C, shift: int = 0, start: int = 1):
    """Carriers and centers for the polygon chain beginning at side ``start``.

    Chain line ``i`` is side ``start + i`` of ``A`` and the chord from line
    ``i`` to line ``i + 1`` passes through ``C[(start + i - shift) % n]``,
    matching the solver's incidence convention.
    """
    n = A.n
    carriers = [A.side((start + i) % n) for i in range(n)]
    centers = [C[(start + i - shift) % n] for i in range(n)]
    return carriers, centers


def side_locus_samples(
    A: ConvexPolygon, C, shift: int = 0, samples: int = 20, start: int = 1, eps=None
) -> list[PlanePoint]:
    """Locus samples for a polygon instance, sweeping side ``start``."""
    carriers, centers = side_chain(A, C, shift, start)
    return locus_samples(carriers, centers, samples, eps)


def fit_locus_conic(samples, eps=None) -> tuple[Conic, float]:
    """Fit one conic to all samples; return it with the max residual.

    Total least squares on the full incidence system (null vector of the
    N x 6 monomial matrix, column-scaled).  Using every sample keeps the fit
    stable even when the locus is close to a degenerate line pair, where any
    five-point interpolation is ill conditioned.  Raises
    :class:`DegenerateChain` when the samples do not lie on a single conic.
    """
    pts = list(samples)
    if len(pts) < 5:
        raise DegenerateChain(f"need at least 5 samples to fit a conic, got {len(pts)}")
    rows = np.array([[p.x * p.x, p.x * p.y, p.y * p.y, p.x, p.y, 1.0] for p in pts])
    col_scale = np.max(np.abs(rows), axis=0)
    col_scale[col_scale == 0.0] = 1.0
    _, sing, vh = np.linalg.svd(rows / col_scale)
    if sing[-1] > 1e-6 * sing[0]:
        raise DegenerateChain("samples do not lie on a single conic")
    conic = Conic(*(vh[-1] / col_scale))
    residual = max(conic.residual_at(p) for p in pts)
    return conic, residual


def solve_via_conic(
    A: ConvexPolygon, C, shift: int = 0, samples: int = 24, eps=None
) -> list[SolutionPolygon]:
    """Solve one shift through the locus conic instead of fixed points.

    The chain is arranged so the swept line is side 1 of ``A``; the fitted
    locus conic meets that side's line in at most two points, and each
    intersection seeds a full candidate polygon which is validated exactly
    like the fixed-point solver's candidates.
    """
    eps = resolve_eps(eps)
    inst = PolygonInstance(A, tuple(C), shift)
    samples_pts = side_locus_samples(A, inst.C, shift, samples, start=1, eps=eps)
    conic, _ = fit_locus_conic(samples_pts, eps)
    side = A.side(1)
    hits = conic_line_intersections(conic, side.supporting_line(), eps)
    out = []
    for p in hits:
        t1 = segment_param(p, side, math.sqrt(eps))
        out.append(candidate_from_seed(inst, 1, t1, eps))
    return out


def five_point_markers(A: ConvexPolygon, C, eps=None) -> tuple[PlanePoint, ...]:
    """For a triangle chain, the five classical points on the locus conic.

    These are the corner ``A_0``, the centers ``C_0`` and ``C_1``, and the two
    auxiliary intersections ``P = line(A_0, A_1) ∩ line(C_1, C_2)`` and
    ``Q = line(A_0, A_2) ∩ line(C_0, C_2)``.
    """
    eps = resolve_eps(eps)
    if A.n != 3:
        raise ValueError("five-point markers are defined for triangles only")
    p = intersect_lines(line_through(A.vertex(0), A.vertex(1)), line_through(C[1], C[2]), eps)
    q = intersect_lines(line_through(A.vertex(0), A.vertex(2)), line_through(C[0], C[2]), eps)
    return (A.vertex(0), C[0], C[1], p, q)


def moving_chord_locus(
    omega: Conic,
    b_point: PlanePoint,
    f_point: PlanePoint,
    pivot: PlanePoint,
    line: ProjLine,
    samples: int = 24,
    eps=None,
) -> Conic:
    """Locus of ``T`` as ``E`` sweeps the conic: a conic through ``pivot`` and ``b_point``.

    ``b_point`` and ``f_point`` are fixed on ``omega``; for a moving point
    ``E`` on ``omega``, ``K = line(f_point, E) ∩ line`` and
    ``T = line(pivot, K) ∩ line(b_point, E)``.  ``E`` is swept rationally by
    chord directions through ``b_point``, which parameterizes the conic
    without root-picking ambiguity; degenerate samples are skipped.
    """
    eps = resolve_eps(eps)
    on_tol = 1e-6
    for name, p in (("b_point", b_point), ("f_point", f_point)):
        if omega.residual_at(p) > on_tol:
            raise PointsNotOnConic(f"{name} lies off the base conic")

    ts: list[PlanePoint] = []
    for angle in np.linspace(0.0, math.pi, samples, endpoint=False):
        dx, dy = math.cos(float(angle)), math.sin(float(angle))
        qa = omega.a * dx * dx + omega.b * dx * dy + omega.c * dy * dy
        qb = (
            2.0 * omega.a * b_point.x * dx
            + omega.b * (b_point.x * dy + b_point.y * dx)
            + 2.0 * omega.c * b_point.y * dy
            + omega.d * dx
            + omega.e * dy
        )
        if abs(qa) <= eps * max(abs(qa), abs(qb), 1.0):
            continue  # asymptotic direction
        t_second = -qb / qa
        if abs(t_second) <= math.sqrt(eps):
            continue  # tangent direction: E collapses onto b_point
        e_pt = PlanePoint(b_point.x + t_second * dx, b_point.y + t_second * dy)
        try:
            k = intersect_lines(line_through(f_point, e_pt, eps), line, eps)
            chord_be = line_through(b_point, e_pt, eps)
            t = intersect_lines(line_through(pivot, k, eps), chord_be, eps)
        except (ParallelLines, CoincidentPoints):
            continue
        ts.append(t)
    if len(ts) < 5:
        raise DegenerateChain(f"only {len(ts)} usable chord samples")
    conic, _ = fit_locus_conic(ts, eps)
    return conic


# ---------------------------------------------------------------------------
# Classical incidence predicates (homogeneous)
# ---------------------------------------------------------------------------


def _homogeneous(p: PlanePoint) -> np.ndarray:
    return np.array([p.x, p.y, 1.0])


def _unit(v: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(v)
    if norm == 0.0:
        raise ValueError("zero homogeneous vector")
    return v / norm


def pascal_hexagon_collinearity(
    hexagon, omega: Conic, on_tol: float = 1e-6, collinear_tol: float = 1e-9
) -> tuple[bool, float]:
    """Pascal check: opposite-side intersections of a conic hexagon are collinear.

    All six points must lie on ``omega`` within ``on_tol``.  The three
    intersections are computed homogeneously (parallel opposite sides meet at
    infinity), and the returned residual is the determinant of their unit
    representatives.
    """
    pts = list(hexagon)
    if len(pts) != 6:
        raise ValueError(f"need exactly 6 hexagon points, got {len(pts)}")
    for i, p in enumerate(pts):
        if omega.residual_at(p) > on_tol:
            raise PointsNotOnConic(f"hexagon point {i} lies off the conic")
    sides = [
        _unit(np.cross(_homogeneous(pts[i]), _homogeneous(pts[(i + 1) % 6])))
        for i in range(6)
    ]
    meets = [_unit(np.cross(sides[i], sides[i + 3])) for i in range(3)]
    residual = abs(float(np.linalg.det(np.stack(meets))))
    return residual <= collinear_tol, residual


def perspective_triangles_axis(
    tri1, tri2, concurrency_tol: float = 1e-8, collinear_tol: float = 1e-9
) -> tuple[bool, float]:
    """Desargues check: triangles perspective from a point have a collinear axis.

    The three joins of corresponding vertices must be concurrent within
    ``concurrency_tol`` (otherwise :class:`NotPerspective`); the function then
    intersects corresponding side lines homogeneously and reports the
    collinearity verdict with its determinant residual.
    """
    p = [_homogeneous(v) for v in tri1]
    q = [_homogeneous(v) for v in tri2]
    joins = [_unit(np.cross(p[i], q[i])) for i in range(3)]
    concurrency = abs(float(np.linalg.det(np.stack(joins))))
    if concurrency > concurrency_tol:
        raise NotPerspective(f"vertex joins are not concurrent (residual {concurrency:g})")
    axis_points = []
    for i, j in ((0, 1), (1, 2), (2, 0)):
        side1 = np.cross(p[i], p[j])
        side2 = np.cross(q[i], q[j])
        axis_points.append(_unit(np.cross(side1, side2)))
    residual = abs(float(np.linalg.det(np.stack(axis_points))))
    return residual <= collinear_tol, residual
