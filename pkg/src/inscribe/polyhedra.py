"""Inscribed graphs of polyhedra: per-face planar reduction plus stitching.

A candidate inscribed graph chooses one point on every edge of a polyhedron's
1-skeleton so that the points on each face solve that face's planar
inscription problem with respect to a prescribed inner polygon.  Faces are
reduced to the planar solver through an isometric in-plane frame, and the
per-face solutions are stitched together by a backtracking search that
matches the parameter each face induces on every shared edge.  The global
count never exceeds the planar bound of four.

Alternating-height solutions exist only when every vertex has an even number
of incident faces, which is why the octahedron works where the tetrahedron
and the cube (odd face-degree at each vertex) yield nothing.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import OffPlane
from .geom import ConvexPolygon, PlanePoint
from .regular import inner_height
from .solver import PolygonInstance, solve_all
from .tol import resolve_eps

EdgeKey = tuple[int, int]

#: Shared-edge parameters from two independently solved faces must agree to
#: this bound; it is looser than the geometric tolerance because each side
#: accumulates its own solve error.
STITCH_TOL = 1e-7


def _edge_key(a: int, b: int) -> EdgeKey:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class PolyhedronGraph:
    """A polyhedron 1-skeleton with faces: vertices, edges, face cycles."""

    vertices: np.ndarray  # (V, 3), read-only
    faces: tuple[tuple[int, ...], ...]
    edges: tuple[EdgeKey, ...]
    edge_faces: dict[EdgeKey, tuple[int, ...]]

    @classmethod
    def from_faces(cls, vertices, faces) -> "PolyhedronGraph":
        verts = np.array(vertices, dtype=float)
        verts.setflags(write=False)
        cycles = tuple(tuple(int(i) for i in f) for f in faces)
        edge_faces: dict[EdgeKey, list[int]] = {}
        for fi, cycle in enumerate(cycles):
            m = len(cycle)
            for j in range(m):
                key = _edge_key(cycle[j], cycle[(j + 1) % m])
                edge_faces.setdefault(key, []).append(fi)
        return cls(
            vertices=verts,
            faces=cycles,
            edges=tuple(sorted(edge_faces)),
            edge_faces={k: tuple(v) for k, v in edge_faces.items()},
        )

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def euler_characteristic(self) -> int:
        return self.vertex_count - self.edge_count + self.face_count

    def face_points(self, fi: int) -> np.ndarray:
        return self.vertices[list(self.faces[fi])]


@dataclass(frozen=True)
class ValidationReport:
    """Structural checks on a polyhedron graph; violations, never exceptions."""

    vertex_count: int
    edge_count: int
    face_count: int
    euler_characteristic: int
    planarity_violations: tuple[str, ...]
    convexity_violations: tuple[str, ...]
    edge_face_violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not (
            self.planarity_violations
            or self.convexity_violations
            or self.edge_face_violations
        )


def _face_frame(points: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Deterministic orthonormal frame: origin, in-plane axes from the cycle."""
    origin = points[0]
    ex = points[1] - points[0]
    ex = ex / np.linalg.norm(ex)
    # Newell normal of the stored cycle; flipping the cycle flips the normal
    # and the second axis together, so in-frame coordinates stay CCW.
    normal = np.zeros(3)
    m = len(points)
    for j in range(m):
        p, q = points[j], points[(j + 1) % m]
        normal += np.cross(p, q)
    normal = normal / np.linalg.norm(normal)
    ey = np.cross(normal, ex)
    return origin, ex, ey


def validate_graph(g: PolyhedronGraph, eps=None) -> ValidationReport:
    """Planarity and strict convexity of faces, edge-face counts, Euler number.

    The Euler characteristic is reported, not enforced, so that glued
    non-convex inputs remain admissible.
    """
    eps = resolve_eps(eps)
    planarity: list[str] = []
    convexity: list[str] = []
    edge_face: list[str] = []
    for fi in range(g.face_count):
        pts = g.face_points(fi)
        centered = pts - pts.mean(axis=0)
        scale = max(1.0, float(np.max(np.abs(pts))))
        # Smallest singular direction is the plane normal; its projections
        # measure the off-plane offsets.
        _, _, vh = np.linalg.svd(centered)
        offsets = centered @ vh[-1]
        worst = float(np.max(np.abs(offsets)))
        if worst > eps * scale:
            planarity.append(f"face {fi} off-plane by {worst:g}")
            continue
        origin, ex, ey = _face_frame(pts)
        flat = [PlanePoint(float((p - origin) @ ex), float((p - origin) @ ey)) for p in pts]
        try:
            ConvexPolygon(flat)
        except Exception as exc:
            convexity.append(f"face {fi}: {exc}")
    for key, faces in g.edge_faces.items():
        if len(faces) != 2:
            edge_face.append(f"edge {key} belongs to {len(faces)} faces")
    return ValidationReport(
        vertex_count=g.vertex_count,
        edge_count=g.edge_count,
        face_count=g.face_count,
        euler_characteristic=g.euler_characteristic(),
        planarity_violations=tuple(planarity),
        convexity_violations=tuple(convexity),
        edge_face_violations=tuple(edge_face),
    )


@dataclass(frozen=True)
class ParityReport:
    """Number of faces meeting at each vertex, and whether all are even."""

    face_degrees: dict[int, int]
    all_even: bool


def parity_check(g: PolyhedronGraph) -> ParityReport:
    degrees = {v: 0 for v in range(g.vertex_count)}
    for cycle in g.faces:
        for v in cycle:
            degrees[v] += 1
    return ParityReport(degrees, all(d % 2 == 0 for d in degrees.values()))


@dataclass(frozen=True)
class InnerPolygons:
    """Per-face inner polygons the inscribed graph must circumscribe.

    ``per_face[i]`` holds the inner points of face ``i`` (3D, lying in that
    face's plane), ordered so that point ``j`` belongs between the face-cycle
    sides ``j`` and ``j+1`` of the solution polygon.
    """

    per_face: tuple[np.ndarray, ...]

    @classmethod
    def from_points(cls, per_face) -> "InnerPolygons":
        arrays = []
        for pts in per_face:
            arr = np.array(pts, dtype=float)
            arr.setflags(write=False)
            arrays.append(arr)
        return cls(tuple(arrays))


def face_instance(
    g: PolyhedronGraph, face_index: int, gamma: InnerPolygons, eps=None
) -> PolygonInstance:
    """Reduce one face and its inner polygon to a planar instance.

    The in-plane frame is deterministic (first cycle edge plus the in-plane
    normal), so repeated calls are bit-identical, and the projection is an
    isometry of the face plane.  Inner points off the plane raise
    :class:`OffPlane`.
    """
    eps = resolve_eps(eps)
    pts = g.face_points(face_index)
    origin, ex, ey = _face_frame(pts)
    normal = np.cross(ex, ey)
    scale = max(1.0, float(np.max(np.abs(pts))))
    flat_a = [PlanePoint(float((p - origin) @ ex), float((p - origin) @ ey)) for p in pts]
    flat_c = []
    for j, p in enumerate(gamma.per_face[face_index]):
        off = float((p - origin) @ normal)
        if abs(off) > eps * scale:
            raise OffPlane(f"inner point {j} of face {face_index} is {off:g} off-plane")
        flat_c.append(PlanePoint(float((p - origin) @ ex), float((p - origin) @ ey)))
    return PolygonInstance(ConvexPolygon(flat_a), tuple(flat_c), 0)


def face_planar_solutions(
    g: PolyhedronGraph, gamma: InnerPolygons, eps=None
) -> list[list[dict[EdgeKey, float]]]:
    """Per-face planar solutions as canonical edge-parameter maps.

    Each solution maps every boundary edge to the parameter of its point,
    measured along the edge oriented from the lower vertex index to the
    higher one, which makes parameters directly comparable across faces.
    """
    per_face: list[list[dict[EdgeKey, float]]] = []
    for fi in range(g.face_count):
        inst = face_instance(g, fi, gamma, eps)
        cycle = g.faces[fi]
        m = len(cycle)
        entries: list[dict[EdgeKey, float]] = []
        for sol in solve_all(inst.A, inst.C, eps).solutions:
            edge_params: dict[EdgeKey, float] = {}
            for j in range(m):
                a, b = cycle[j], cycle[(j + 1) % m]
                t = sol.params[j]
                edge_params[_edge_key(a, b)] = t if a < b else 1.0 - t
            entries.append(edge_params)
        per_face.append(entries)
    return per_face


@dataclass(frozen=True)
class InscribedGraphSolution:
    """A consistent assignment: one parameter per edge, one choice per face."""

    edge_params: dict[EdgeKey, float]
    per_face_choice: dict[int, int] | None = None


def _face_order(g: PolyhedronGraph) -> list[int]:
    """Faces in BFS order over shared-edge adjacency, rooted at face 0."""
    adjacency: dict[int, set[int]] = {fi: set() for fi in range(g.face_count)}
    for faces in g.edge_faces.values():
        if len(faces) == 2:
            a, b = faces
            adjacency[a].add(b)
            adjacency[b].add(a)
    order, seen = [], set()
    queue = deque()
    for root in range(g.face_count):
        if root in seen:
            continue
        queue.append(root)
        seen.add(root)
        while queue:
            fi = queue.popleft()
            order.append(fi)
            for nb in sorted(adjacency[fi]):
                if nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
    return order


def solve_graph(
    g: PolyhedronGraph,
    gamma: InnerPolygons,
    eps=None,
    match_tol: float = STITCH_TOL,
) -> list[InscribedGraphSolution]:
    """All inscribed graphs consistent with the per-face inner polygons.

    Every face is solved independently, then a backtracking pass over the
    faces in BFS order keeps only combinations whose shared-edge parameters
    agree within ``match_tol``.  A face with no planar solutions makes the
    global count zero immediately.
    """
    per_face = face_planar_solutions(g, gamma, eps)
    if any(not entries for entries in per_face):
        return []
    order = _face_order(g)
    solutions: list[InscribedGraphSolution] = []

    def backtrack(idx: int, assigned: dict[EdgeKey, float], choices: dict[int, int]):
        if idx == len(order):
            solutions.append(InscribedGraphSolution(dict(assigned), dict(choices)))
            return
        fi = order[idx]
        for ci, cand in enumerate(per_face[fi]):
            if all(abs(assigned[k] - v) <= match_tol for k, v in cand.items() if k in assigned):
                added = [k for k in cand if k not in assigned]
                assigned.update(cand)
                choices[fi] = ci
                backtrack(idx + 1, assigned, choices)
                del choices[fi]
                for k in added:
                    del assigned[k]

    backtrack(0, {}, {})
    assert len(solutions) <= 4, f"stitching produced {len(solutions)} > 4 solutions"
    return solutions


# ---------------------------------------------------------------------------
# Solid generators
# ---------------------------------------------------------------------------


def _oriented_outward(vertices: np.ndarray, cycle: tuple[int, ...], interior: np.ndarray):
    """Return the cycle ordered so its normal points away from ``interior``."""
    pts = vertices[list(cycle)]
    normal = np.zeros(3)
    m = len(pts)
    for j in range(m):
        normal += np.cross(pts[j], pts[(j + 1) % m])
    outward = pts.mean(axis=0) - interior
    return cycle if float(normal @ outward) > 0.0 else tuple(reversed(cycle))


def octahedron() -> PolyhedronGraph:
    """Regular octahedron with vertices on the coordinate axes."""
    verts = np.array(
        [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]],
        dtype=float,
    )
    triples = [
        (0, 2, 4), (2, 1, 4), (1, 3, 4), (3, 0, 4),
        (2, 0, 5), (1, 2, 5), (3, 1, 5), (0, 3, 5),
    ]
    center = np.zeros(3)
    faces = [_oriented_outward(verts, f, center) for f in triples]
    return PolyhedronGraph.from_faces(verts, faces)


def tetrahedron() -> PolyhedronGraph:
    verts = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float)
    center = np.zeros(3)
    faces = [
        _oriented_outward(verts, f, center)
        for f in [(1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1)]
    ]
    return PolyhedronGraph.from_faces(verts, faces)


def cube() -> PolyhedronGraph:
    verts = np.array(
        [
            [-1, -1, -1], [-1, -1, 1], [-1, 1, -1], [-1, 1, 1],
            [1, -1, -1], [1, -1, 1], [1, 1, -1], [1, 1, 1],
        ],
        dtype=float,
    )
    center = np.zeros(3)
    squares = [
        (1, 5, 7, 3), (0, 4, 6, 2), (4, 5, 7, 6),
        (0, 1, 3, 2), (2, 3, 7, 6), (0, 1, 5, 4),
    ]
    faces = [_oriented_outward(verts, f, center) for f in squares]
    return PolyhedronGraph.from_faces(verts, faces)


def regular_face_inners(g: PolyhedronGraph) -> InnerPolygons:
    """The symmetric equal-height inner polygon on every (regular) face.

    On a regular ``m``-gon face of half-side ``a``, the inner point for side
    ``j`` sits on the segment from the side midpoint toward the face centroid
    at the family's shared height; it is invariant under the face's
    rotations, so no orientation choice is involved.
    """
    per_face = []
    for fi in range(g.face_count):
        pts = g.face_points(fi)
        m = len(pts)
        centroid = pts.mean(axis=0)
        side = float(np.linalg.norm(pts[1] - pts[0]))
        a = side / 2.0
        height = inner_height(m, a, a / 2.0)
        inner = []
        for j in range(m):
            mid = (pts[j] + pts[(j + 1) % m]) / 2.0
            toward = centroid - mid
            inner.append(mid + height * toward / np.linalg.norm(toward))
        per_face.append(np.array(inner))
    return InnerPolygons.from_points(per_face)


def _face_bipartition(g: PolyhedronGraph) -> dict[int, int] | None:
    """Two-color the face-adjacency graph; ``None`` when an odd cycle exists."""
    color: dict[int, int] = {}
    for root in range(g.face_count):
        if root in color:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            fi = queue.popleft()
            for faces in g.edge_faces.values():
                if len(faces) != 2 or fi not in faces:
                    continue
                nb = faces[0] if faces[1] == fi else faces[1]
                if nb not in color:
                    color[nb] = 1 - color[fi]
                    queue.append(nb)
                elif color[nb] == color[fi]:
                    return None
    return color


def alternating_solutions(g: PolyhedronGraph) -> list[InscribedGraphSolution]:
    """The expected inscribed graphs of a solid carrying equal-height inners.

    Each face uses one of the two distinguished parameters or its mirror; on
    a shared edge the two incident faces traverse the edge oppositely, so a
    consistent assignment alternates between a parameter and its mirror along
    a proper two-coloring of the faces.  Two colorings times two parameter
    families give the four expected solutions (none when no coloring exists).
    """
    coloring = _face_bipartition(g)
    if coloring is None:
        return []
    m = len(g.faces[0])
    t_near = 0.25
    t_far = 1.0 / (2.0 * (1.0 + math.cos(math.pi / m) ** 2))
    out = []
    for family in (t_near, t_far):
        for swap in (0, 1):
            edge_params: dict[EdgeKey, float] = {}
            for fi, cycle in enumerate(g.faces):
                t = family if coloring[fi] == swap else 1.0 - family
                k = len(cycle)
                for j in range(k):
                    a, b = cycle[j], cycle[(j + 1) % k]
                    edge_params[_edge_key(a, b)] = t if a < b else 1.0 - t
            out.append(InscribedGraphSolution(edge_params, None))
    return out


def octahedron_example() -> tuple[PolyhedronGraph, InnerPolygons, list[InscribedGraphSolution]]:
    """The octahedron instance realizing four inscribed graphs."""
    g = octahedron()
    gamma = regular_face_inners(g)
    return g, gamma, alternating_solutions(g)


def glued_octahedra(count: int) -> PolyhedronGraph:
    """A stack of ``count`` octahedra glued face to face.

    Each new octahedron is the mirror image of the previous one across the
    attach-face plane, so consecutive copies share exactly that triangle; the
    glued face pair is interior and removed.  Every vertex belongs to one or
    two octahedra, and four or six faces meet at each vertex.
    """
    if not 1 <= count <= 8:
        raise ValueError(f"count must be between 1 and 8, got {count}")
    template = octahedron()
    local_faces = template.faces
    antipode = {0: 1, 1: 0, 2: 3, 3: 2, 4: 5, 5: 4}

    vert_ids: dict[tuple[float, ...], int] = {}
    global_verts: list[np.ndarray] = []

    def gid(p: np.ndarray) -> int:
        key = tuple(round(float(c), 9) + 0.0 for c in p)
        if key not in vert_ids:
            vert_ids[key] = len(global_verts)
            global_verts.append(np.asarray(p, dtype=float))
        return vert_ids[key]

    current = np.array(template.vertices)
    attach = (0, 2, 4)
    all_faces: list[tuple[int, ...]] = []

    for _ in range(count):
        center = current.mean(axis=0)
        ids = [gid(v) for v in current]
        for cycle in local_faces:
            oriented = cycle
            pts = current[list(cycle)]
            normal = np.zeros(3)
            for j in range(3):
                normal += np.cross(pts[j] - center, pts[(j + 1) % 3] - center)
            if float(normal @ (pts.mean(axis=0) - center)) < 0.0:
                oriented = tuple(reversed(cycle))
            all_faces.append(tuple(ids[i] for i in oriented))

        # Reflect across the attach-face plane for the next copy.
        tri = current[list(attach)]
        normal = np.cross(tri[1] - tri[0], tri[2] - tri[0])
        normal = normal / np.linalg.norm(normal)
        offset = float(tri[0] @ normal)
        current = current - 2.0 * ((current @ normal - offset)[:, None] * normal[None, :])
        attach = tuple(antipode[i] for i in attach)

    # Faces sharing a vertex set appear once per incident octahedron; glued
    # pairs are interior and drop out.
    keyed: dict[frozenset[int], list[tuple[int, ...]]] = {}
    for f in all_faces:
        keyed.setdefault(frozenset(f), []).append(f)
    boundary = [fs[0] for fs in keyed.values() if len(fs) == 1]
    order = {f: i for i, f in enumerate(all_faces)}
    boundary.sort(key=order.get)
    return PolyhedronGraph.from_faces(np.array(global_verts), boundary)
