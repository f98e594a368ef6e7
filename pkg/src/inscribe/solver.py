"""Solver for convex polygons inscribed in one polygon and circumscribed
about another.

An instance is a strictly convex polygon ``A`` with one interior point ``C_i``
per wedge and a shift ``k``; a solution is a convex polygon ``B`` with
``B_i`` strictly interior to side ``A_i A_{i+1}`` and ``C_i`` strictly between
``B_{k+i}`` and ``B_{k+i+1}``.  Propagating a seed parameter around the chain
of central projections turns the closed-chain condition into a projective
fixed-point problem on side 0, so each shift contributes 0, 1 or 2 candidate
polygons (or an identity map flagged as degenerate).  Scanning every shift and
validating the candidates yields the full solution set, whose size never
exceeds 4 for convex data.

The module also provides a grid-plus-bisection oracle that locates the same
fixed points without using the quadratic formula, and the generalized
enumeration over full lines where the count is only bounded by ``n!(n-1)!``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NotStrictlyConvex, ParallelLines
from .geom import (
    ConvexPolygon,
    ParamSegment,
    PlanePoint,
    ProjLine,
    distance,
    intersect_lines,
    line_through,
)
from .projective import (
    MoebiusMap,
    ProjParam,
    apply,
    apply_to_float,
    central_projection,
    chordal,
    compose,
    fixed_points,
)
from .tol import resolve_eps

#: Two solutions whose side parameters agree within this bound count as one.
MATCH_TOL = 1e-6


@dataclass(frozen=True)
class PolygonInstance:
    """One solving task: outer polygon ``A``, inner points ``C``, shift ``k``.

    The incidence convention is ``C_i`` strictly between ``B_{k+i}`` and
    ``B_{k+i+1}`` (indices mod ``n``).  Validation checks that ``C`` is
    strictly convex in order and strictly inside ``A``; pass
    ``validate=False`` to build intentionally degenerate instances.
    """

    A: ConvexPolygon
    C: tuple[PlanePoint, ...]
    shift: int = 0

    def __init__(self, A, C, shift=0, validate=True):
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "C", tuple(C))
        object.__setattr__(self, "shift", int(shift))
        if validate:
            self._check()

    def _check(self):
        n = self.A.n
        if len(self.C) != n:
            raise ValueError(f"expected {n} inner points, got {len(self.C)}")
        try:
            ConvexPolygon(self.C)
        except NotStrictlyConvex as exc:
            raise NotStrictlyConvex(f"inner points are not strictly convex in order: {exc}") from exc
        for i, c in enumerate(self.C):
            if not self.A.contains_strict(c):
                raise ValueError(f"inner point {i} is not strictly inside the outer polygon")

    @property
    def n(self) -> int:
        return self.A.n


@dataclass(frozen=True)
class SolutionPolygon:
    """A candidate polygon: one parameter per side of ``A`` plus verdicts.

    ``params[i]`` locates ``B_i`` on side ``A_i A_{i+1}``; a value can be
    ``inf`` when the chain passes through a point at infinity.  ``reasons``
    lists the violated checks when ``valid`` is false.
    """

    params: tuple[float, ...]
    shift: int
    valid: bool
    reasons: tuple[str, ...] = ()
    points: tuple[PlanePoint, ...] | None = None


@dataclass(frozen=True)
class ShiftSolutions:
    """Everything one shift produced: candidates plus the identity flag."""

    candidates: tuple[SolutionPolygon, ...]
    identity: bool

    @property
    def valid(self) -> tuple[SolutionPolygon, ...]:
        return tuple(s for s in self.candidates if s.valid)


@dataclass(frozen=True)
class SolutionSet:
    """Aggregated valid solutions over all shifts."""

    solutions: tuple[SolutionPolygon, ...]
    per_shift_counts: dict[int, int] = field(default_factory=dict)
    identity_flags: dict[int, bool] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return len(self.solutions)

    @property
    def identity_detected(self) -> bool:
        return any(self.identity_flags.values())


@dataclass(frozen=True)
class TheoremReport:
    """Outcome of the at-most-four check for one instance."""

    count: int
    bound_satisfied: bool
    identity_detected: bool
    per_shift_counts: dict[int, int]


def chain_maps(inst: PolygonInstance, eps=None) -> list[MoebiusMap]:
    """The ``n`` perspectivities ``f_j``: side ``j`` to side ``j+1``.

    With shift ``k`` the center carrying side ``j`` to side ``j+1`` is
    ``C_{j-k}``, so that a closed chain puts ``C_i`` on ``B_{k+i}B_{k+i+1}``.
    """
    eps = resolve_eps(eps)
    n = inst.n
    maps = []
    for j in range(n):
        center = inst.C[(j - inst.shift) % n]
        maps.append(central_projection(center, inst.A.side(j), inst.A.side(j + 1), eps))
    return maps


def return_map(inst: PolygonInstance, eps=None) -> MoebiusMap:
    """Composition ``f_{n-1} ∘ ... ∘ f_0`` acting on the side-0 parameter."""
    maps = chain_maps(inst, eps)
    total = maps[0]
    for m in maps[1:]:
        total = compose(m, total)
    return total


def _validate_candidate(
    inst: PolygonInstance, params_proj: list[ProjParam], eps: float
) -> SolutionPolygon:
    """Run every validity check on a propagated parameter chain."""
    n = inst.n
    reasons: list[str] = []
    params = tuple(p.to_float() for p in params_proj)

    if any(p.is_infinite(eps) for p in params_proj):
        reasons.append("at_infinity")
    finite = not reasons
    if finite and not all(eps <= t <= 1.0 - eps for t in params):
        reasons.append("out_of_segment")

    points: tuple[PlanePoint, ...] | None = None
    if finite:
        points = tuple(inst.A.side(i).point_at(params[i]) for i in range(n))
        try:
            ConvexPolygon(points)
        except NotStrictlyConvex:
            reasons.append("not_convex")
        else:
            k = inst.shift
            for i in range(n):
                b0 = points[(k + i) % n]
                b1 = points[(k + i + 1) % n]
                dx, dy = b1.x - b0.x, b1.y - b0.y
                den = dx * dx + dy * dy
                c = inst.C[i]
                u = ((c.x - b0.x) * dx + (c.y - b0.y) * dy) / den
                if not (eps <= u <= 1.0 - eps):
                    reasons.append("center_not_between")
                    break
    return SolutionPolygon(
        params=params,
        shift=inst.shift % n,
        valid=not reasons,
        reasons=tuple(reasons),
        points=points,
    )


def candidate_from_seed(
    inst: PolygonInstance, side_index: int, t_seed: float, eps=None
) -> SolutionPolygon:
    """Propagate a seed parameter on one side around the chain and validate.

    Used both by the fixed-point solver (seeding side 0) and by the conic
    cross-check (seeding the side the locus conic was intersected with).
    """
    eps = resolve_eps(eps)
    maps = chain_maps(inst, eps)
    n = inst.n
    params_proj: list[ProjParam | None] = [None] * n
    cur = ProjParam.from_float(t_seed)
    params_proj[side_index % n] = cur
    for step in range(n - 1):
        j = (side_index + step) % n
        cur = apply(maps[j], cur)
        params_proj[(j + 1) % n] = cur
    candidate = _validate_candidate(inst, params_proj, eps)
    # Closure: one more application must return the seed.
    closing = apply(maps[(side_index + n - 1) % n], cur)
    if chordal(closing, params_proj[side_index % n]) > 1e-7 and candidate.valid:
        candidate = SolutionPolygon(
            params=candidate.params,
            shift=candidate.shift,
            valid=False,
            reasons=candidate.reasons + ("closure",),
            points=candidate.points,
        )
    return candidate


def solve_shift(inst: PolygonInstance, eps=None) -> ShiftSolutions:
    """All candidate polygons for the instance's fixed shift.

    Each projective fixed point of the return map is propagated through the
    chain and validated (interior parameters, strict convexity, inner points
    strictly between consecutive vertices).  An identity return map is
    reported through the flag with no enumerated candidates.
    """
    eps = resolve_eps(eps)
    maps = chain_maps(inst, eps)
    total = maps[0]
    for m in maps[1:]:
        total = compose(m, total)
    result = fixed_points(total, eps)
    if result.is_identity:
        return ShiftSolutions((), True)

    n = inst.n
    candidates = []
    for fp in result.points:
        params_proj = [fp]
        cur = fp
        for j in range(n - 1):
            cur = apply(maps[j], cur)
            params_proj.append(cur)
        candidates.append(_validate_candidate(inst, params_proj, eps))
    return ShiftSolutions(tuple(candidates), False)


def _params_close(p: tuple[float, ...], q: tuple[float, ...], tol: float) -> bool:
    return all(
        (math.isinf(a) and math.isinf(b)) or abs(a - b) <= tol for a, b in zip(p, q)
    )


def solve_all(A: ConvexPolygon, C, eps=None, match_tol: float = MATCH_TOL) -> SolutionSet:
    """Scan every shift, aggregate the valid polygons, dedup by parameters.

    All ``n`` shifts are scanned even though convex data can only realize two
    adjacent ones; the impossible shifts coming back empty doubles as a
    self-check.  Two solutions are the same polygon when their side-parameter
    vectors agree within ``match_tol``.
    """
    eps = resolve_eps(eps)
    base = PolygonInstance(A, C, 0)  # validates A/C once
    n = A.n
    solutions: list[SolutionPolygon] = []
    per_shift: dict[int, int] = {}
    identity: dict[int, bool] = {}
    for k in range(n):
        inst = PolygonInstance(base.A, base.C, k, validate=False)
        shift_result = solve_shift(inst, eps)
        valid = shift_result.valid
        per_shift[k] = len(valid)
        identity[k] = shift_result.identity
        for sol in valid:
            if not any(_params_close(sol.params, kept.params, match_tol) for kept in solutions):
                solutions.append(sol)
    return SolutionSet(tuple(solutions), per_shift, identity)


def theorem_check(A: ConvexPolygon, C, eps=None) -> TheoremReport:
    """Count the solutions of ``(A, C)`` and check the at-most-four bound."""
    result = solve_all(A, C, eps)
    return TheoremReport(
        count=result.total,
        bound_satisfied=result.total <= 4,
        identity_detected=result.identity_detected,
        per_shift_counts=result.per_shift_counts,
    )


def brute_force_scan(
    inst: PolygonInstance, grid_size: int = 10_000, eps=None
) -> list[float]:
    """Independent oracle: locate the return map's fixed parameters in (0, 1).

    Evaluates ``g(t) = f(t) - t`` on a uniform grid, brackets sign changes
    away from the pole, and refines each bracket by bisection to 1e-10.  A
    near-tangent double root is additionally picked up by refining local
    minima of ``|g|``; a grid too coarse to separate such a pair may still
    return fewer roots.
    """
    if grid_size < 100:
        raise ValueError("grid_size must be at least 100")
    eps = resolve_eps(eps)
    m = return_map(inst, eps)
    m00, m01, m10, m11 = m.m00, m.m01, m.m10, m.m11

    ts = (np.arange(grid_size) + 0.5) / grid_size
    den = m10 * ts + m11
    ok = np.abs(den) > 1e-14
    g = np.full_like(ts, np.nan)
    g[ok] = (m00 * ts[ok] + m01) / den[ok] - ts[ok]

    def g_at(t: float) -> float:
        return (m00 * t + m01) / (m10 * t + m11) - t

    roots: list[float] = []

    def push(root: float) -> None:
        if not any(abs(root - r) <= 1e-8 for r in roots):
            roots.append(root)

    usable = ok & np.isfinite(g)
    same_side = usable[:-1] & usable[1:] & (den[:-1] * den[1:] > 0.0)
    sign_change = same_side & (g[:-1] * g[1:] < 0.0)
    for i in np.flatnonzero(sign_change):
        lo, hi = float(ts[i]), float(ts[i + 1])
        flo = g_at(lo)
        for _ in range(100):
            mid = 0.5 * (lo + hi)
            fmid = g_at(mid)
            if fmid == 0.0 or hi - lo < 1e-12:
                lo = hi = mid
                break
            if flo * fmid < 0.0:
                hi = mid
            else:
                lo, flo = mid, fmid
        push(0.5 * (lo + hi))

    for i in np.flatnonzero(usable & (g == 0.0)):
        push(float(ts[i]))

    # Local minima of |g| that dip near zero: candidate double roots.
    absg = np.abs(g)
    interior = np.arange(1, grid_size - 1)
    mask = (
        usable[interior]
        & usable[interior - 1]
        & usable[interior + 1]
        & (absg[interior] <= absg[interior - 1])
        & (absg[interior] <= absg[interior + 1])
        & (absg[interior] < 1e-4)
    )
    for i in interior[mask]:
        lo, hi = float(ts[i - 1]), float(ts[i + 1])
        for _ in range(200):
            if hi - lo < 1e-12:
                break
            third = (hi - lo) / 3.0
            if abs(g_at(lo + third)) < abs(g_at(hi - third)):
                hi = hi - third
            else:
                lo = lo + third
        t_star = 0.5 * (lo + hi)
        if abs(g_at(t_star)) < 1e-9:
            push(t_star)

    return sorted(roots)


# ---------------------------------------------------------------------------
# Generalized enumeration over full lines
# ---------------------------------------------------------------------------


def line_carrier(l: ProjLine) -> ParamSegment:
    """A unit-length parameter carrier for a full line.

    The carrier starts at the foot of the perpendicular from the origin and
    runs one unit along the line, so the parameter is an affine coordinate.
    """
    base = PlanePoint(-l.c * l.a, -l.c * l.b)
    dx, dy = l.direction()
    return ParamSegment(base, PlanePoint(base.x + dx, base.y + dy))


@dataclass(frozen=True)
class GeneralizedEnumeration:
    """Distinct solutions of the full-line problem over all arrangements."""

    count: int
    bound: int
    solutions: tuple[tuple[PlanePoint, ...], ...]
    infinite_family: bool
    subproblems: int


def enumerate_generalized(
    lines, points, eps=None, match_tol: float = MATCH_TOL
) -> GeneralizedEnumeration:
    """Enumerate polygons over all line orderings and point assignments.

    Dropping convexity and the segment restriction, the sides may be taken in
    any of the ``(n-1)!`` cyclic orders and the ``n`` points distributed over
    consecutive pairs in ``n!`` ways.  Each arrangement is solved through its
    return map; a candidate counts when every vertex is a genuine finite
    point, the vertices are pairwise distinct, and no vertex sits on two of
    the arrangement's consecutive lines at once.  Solutions are deduplicated
    as point sets, and an arrangement whose return map degenerates to the
    identity raises the ``infinite_family`` flag instead of contributing.
    """
    eps = resolve_eps(eps)
    lines = list(lines)
    points = list(points)
    n = len(lines)
    if n < 3 or len(points) != n:
        raise ValueError("need n >= 3 lines and exactly n points")
    for i in range(n):
        for j in range(i + 1, n):
            du = lines[i].direction()
            dv = lines[j].direction()
            if abs(du[0] * dv[1] - du[1] * dv[0]) <= eps:
                raise ParallelLines(f"lines {i} and {j} are parallel within tolerance")

    carriers = [line_carrier(l) for l in lines]
    scale = max(
        1.0, max(c.start.norm() for c in carriers), max(p.norm() for p in points)
    )
    bound = math.factorial(n) * math.factorial(n - 1)

    solutions: list[tuple[PlanePoint, ...]] = []
    sorted_solutions: list[list[tuple[float, float]]] = []
    infinite_family = False
    subproblems = 0

    for order_rest in itertools.permutations(range(1, n)):
        order = (0,) + order_rest
        segs = [carriers[i] for i in order]
        corner_cache = [
            intersect_lines(lines[order[i]], lines[order[(i + 1) % n]], eps)
            for i in range(n)
        ]
        for assignment in itertools.permutations(range(n)):
            subproblems += 1
            centers = [points[assignment[i]] for i in range(n)]
            maps = []
            try:
                for i in range(n):
                    maps.append(
                        central_projection(centers[i], segs[i], segs[(i + 1) % n], eps)
                    )
            except Exception:
                continue  # center on a line: degenerate arrangement, skip
            total = maps[0]
            for mp in maps[1:]:
                total = compose(mp, total)
            fp_result = fixed_points(total, eps)
            if fp_result.is_identity:
                infinite_family = True
                continue
            for fp in fp_result.points:
                cur = fp
                params = [fp]
                for i in range(n - 1):
                    cur = apply(maps[i], cur)
                    params.append(cur)
                if any(p.is_infinite(eps) for p in params):
                    continue
                verts = [segs[i].point_at(params[i].to_float()) for i in range(n)]
                if any(
                    distance(verts[i], verts[j]) <= 1e-7 * scale
                    for i in range(n)
                    for j in range(i + 1, n)
                ):
                    continue
                if any(
                    distance(verts[i], corner_cache[i]) <= 1e-7 * scale
                    or distance(verts[i], corner_cache[(i - 1) % n]) <= 1e-7 * scale
                    for i in range(n)
                ):
                    continue
                key = sorted((v.x, v.y) for v in verts)
                duplicate = any(
                    all(
                        math.hypot(kx - qx, ky - qy) <= match_tol * scale
                        for (kx, ky), (qx, qy) in zip(key, existing)
                    )
                    for existing in sorted_solutions
                )
                if not duplicate:
                    sorted_solutions.append(key)
                    # Store vertices in arrangement order for rendering.
                    solutions.append(tuple(verts))

    count = len(solutions)
    assert count <= bound, f"enumeration produced {count} > bound {bound}"
    return GeneralizedEnumeration(
        count=count,
        bound=bound,
        solutions=tuple(solutions),
        infinite_family=infinite_family,
        subproblems=subproblems,
    )


# ---------------------------------------------------------------------------
# Randomized instance construction (campaign plumbing)
# ---------------------------------------------------------------------------


def random_convex_polygon(rng: np.random.Generator, n: int) -> ConvexPolygon:
    """A strictly convex ``n``-gon: sorted angles on a random ellipse."""
    while True:
        angles = np.sort(rng.uniform(0.0, 2.0 * math.pi, size=n))
        if np.min(np.diff(angles, append=angles[0] + 2.0 * math.pi)) < 0.15:
            continue
        ax, by = rng.uniform(0.6, 2.0, size=2)
        rot = rng.uniform(0.0, 2.0 * math.pi)
        cx, cy = rng.uniform(-1.0, 1.0, size=2)
        cos_r, sin_r = math.cos(rot), math.sin(rot)
        verts = []
        for t in angles:
            x, y = ax * math.cos(t), by * math.sin(t)
            verts.append(PlanePoint(cx + cos_r * x - sin_r * y, cy + sin_r * x + cos_r * y))
        try:
            return ConvexPolygon(verts)
        except NotStrictlyConvex:
            continue


def seeded_instance(
    rng: np.random.Generator, n: int
) -> tuple[ConvexPolygon, tuple[PlanePoint, ...], tuple[float, ...]]:
    """Build ``(A, C, seed_params)`` with a known inscribed solution.

    A random convex ``A`` is inscribed with a random polygon ``B`` (one
    parameter per side), and ``C_i`` is drawn strictly inside ``B_i B_{i+1}``,
    so ``B`` solves the instance at shift 0 by construction.
    """
    while True:
        A = random_convex_polygon(rng, n)
        seed = tuple(rng.uniform(0.15, 0.85, size=n).tolist())
        b_points = [A.side(i).point_at(seed[i]) for i in range(n)]
        try:
            ConvexPolygon(b_points)
        except NotStrictlyConvex:
            continue
        u = rng.uniform(0.2, 0.8, size=n)
        C = tuple(
            ParamSegment(b_points[i], b_points[(i + 1) % n]).point_at(float(u[i]))
            for i in range(n)
        )
        try:
            PolygonInstance(A, C, 0)
        except Exception:
            continue
        return A, C, seed
