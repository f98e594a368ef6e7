"""JSON instance and result documents.

Documents carry a ``"schema": "inscribe/1"`` tag and one of four payload
kinds: ``polygon``, ``polyhedron``, ``generalized`` and ``conic-chain``.
Serialization is deterministic (sorted keys, fixed indentation, shortest
round-trip float representation), so identical inputs produce byte-identical
output.
"""

from __future__ import annotations

import json

import numpy as np

from . import __version__
from .geom import ConvexPolygon, PlanePoint, ProjLine
from .polyhedra import InnerPolygons, PolyhedronGraph
from .tol import resolve_eps

SCHEMA = "inscribe/1"

KINDS = ("polygon", "polyhedron", "generalized", "conic-chain")


class DocumentError(ValueError):
    """Malformed or out-of-contract instance document."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(message)
        self.where = where

    def as_json(self) -> dict:
        return {"error": {"message": str(self), "where": self.where}}


def dumps(obj) -> str:
    """Deterministic serialization: sorted keys, two-space indent, newline."""
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON: {exc}", where="document") from exc
    if not isinstance(doc, dict):
        raise DocumentError("document root must be an object", where="document")
    return doc


def check_envelope(doc: dict, expected_kind: str | None = None) -> str:
    schema = doc.get("schema")
    if schema != SCHEMA:
        raise DocumentError(f"unsupported schema {schema!r}, expected {SCHEMA!r}", "schema")
    kind = doc.get("kind")
    if kind not in KINDS and not (isinstance(kind, str) and kind.endswith("-result")):
        raise DocumentError(f"unknown document kind {kind!r}", "kind")
    if expected_kind is not None and kind != expected_kind:
        raise DocumentError(f"expected kind {expected_kind!r}, got {kind!r}", "kind")
    if "payload" not in doc or not isinstance(doc["payload"], dict):
        raise DocumentError("document payload missing or not an object", "payload")
    return kind


# ---------------------------------------------------------------------------
# Payload encoding
# ---------------------------------------------------------------------------


def point_to_json(p: PlanePoint) -> list[float]:
    return [p.x, p.y]


def _point_list(raw, where: str, dim: int = 2) -> list[list[float]]:
    if not isinstance(raw, list) or not raw:
        raise DocumentError(f"{where} must be a non-empty list", where)
    out = []
    for i, entry in enumerate(raw):
        if (
            not isinstance(entry, list)
            or len(entry) != dim
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in entry)
        ):
            raise DocumentError(f"{where}[{i}] must be a list of {dim} numbers", where)
        out.append([float(v) for v in entry])
    return out


def polygon_payload(A: ConvexPolygon, C) -> dict:
    return {
        "outer": [point_to_json(v) for v in A.vertices],
        "inner": [point_to_json(c) for c in C],
    }


def parse_polygon_payload(payload: dict) -> tuple[ConvexPolygon, tuple[PlanePoint, ...]]:
    outer = _point_list(payload.get("outer"), "payload.outer")
    inner = _point_list(payload.get("inner"), "payload.inner")
    if len(outer) < 3:
        raise DocumentError("polygon requires n >= 3 outer vertices", "payload.outer")
    if len(inner) != len(outer):
        raise DocumentError(
            f"expected {len(outer)} inner points, got {len(inner)}", "payload.inner"
        )
    A = ConvexPolygon([PlanePoint(x, y) for x, y in outer])
    C = tuple(PlanePoint(x, y) for x, y in inner)
    return A, C


def polyhedron_payload(g: PolyhedronGraph, gamma: InnerPolygons | None = None) -> dict:
    payload = {
        "vertices": [[float(v) for v in row] for row in np.asarray(g.vertices)],
        "faces": [list(f) for f in g.faces],
    }
    if gamma is not None:
        payload["inner_faces"] = [
            [[float(v) for v in row] for row in np.asarray(face)] for face in gamma.per_face
        ]
    return payload


def parse_polyhedron_payload(payload: dict) -> tuple[PolyhedronGraph, InnerPolygons]:
    vertices = _point_list(payload.get("vertices"), "payload.vertices", dim=3)
    faces_raw = payload.get("faces")
    if not isinstance(faces_raw, list) or not faces_raw:
        raise DocumentError("payload.faces must be a non-empty list", "payload.faces")
    faces = []
    for i, f in enumerate(faces_raw):
        if not isinstance(f, list) or len(f) < 3 or not all(isinstance(v, int) for v in f):
            raise DocumentError(f"payload.faces[{i}] must be a cycle of vertex indices", "payload.faces")
        if any(not 0 <= v < len(vertices) for v in f):
            raise DocumentError(f"payload.faces[{i}] references a missing vertex", "payload.faces")
        faces.append(tuple(f))
    inners_raw = payload.get("inner_faces")
    if not isinstance(inners_raw, list) or len(inners_raw) != len(faces):
        raise DocumentError("payload.inner_faces must list one polygon per face", "payload.inner_faces")
    inners = []
    for i, face_pts in enumerate(inners_raw):
        pts = _point_list(face_pts, f"payload.inner_faces[{i}]", dim=3)
        if len(pts) != len(faces[i]):
            raise DocumentError(
                f"payload.inner_faces[{i}] must hold {len(faces[i])} points", "payload.inner_faces"
            )
        inners.append(pts)
    return PolyhedronGraph.from_faces(vertices, faces), InnerPolygons.from_points(inners)


def generalized_payload(lines, points) -> dict:
    return {
        "lines": [[l.a, l.b, l.c] for l in lines],
        "points": [point_to_json(p) for p in points],
    }


def parse_generalized_payload(payload: dict) -> tuple[list[ProjLine], list[PlanePoint]]:
    lines_raw = _point_list(payload.get("lines"), "payload.lines", dim=3)
    points_raw = _point_list(payload.get("points"), "payload.points")
    if len(lines_raw) < 3:
        raise DocumentError("generalized instance requires n >= 3 lines", "payload.lines")
    if len(points_raw) != len(lines_raw):
        raise DocumentError("need exactly one point per line", "payload.points")
    lines = [ProjLine(a, b, c) for a, b, c in lines_raw]
    points = [PlanePoint(x, y) for x, y in points_raw]
    return lines, points


def conic_chain_payload(lines, centers) -> dict:
    return {
        "lines": [[l.a, l.b, l.c] for l in lines],
        "centers": [point_to_json(p) for p in centers],
    }


def parse_conic_chain_payload(payload: dict) -> tuple[list[ProjLine], list[PlanePoint]]:
    lines_raw = _point_list(payload.get("lines"), "payload.lines", dim=3)
    centers_raw = _point_list(payload.get("centers"), "payload.centers")
    if len(lines_raw) < 3:
        raise DocumentError("conic chain requires n >= 3 lines", "payload.lines")
    if len(centers_raw) != len(lines_raw):
        raise DocumentError("need exactly one center per line", "payload.centers")
    lines = [ProjLine(a, b, c) for a, b, c in lines_raw]
    centers = [PlanePoint(x, y) for x, y in centers_raw]
    return lines, centers


# ---------------------------------------------------------------------------
# Documents
# ---------------------------------------------------------------------------


def instance_document(kind: str, payload: dict, metadata: dict | None = None) -> dict:
    if kind not in KINDS:
        raise DocumentError(f"unknown instance kind {kind!r}", "kind")
    return {
        "schema": SCHEMA,
        "kind": kind,
        "payload": payload,
        "metadata": dict(metadata or {}),
    }


def result_document(kind: str, instance: dict, body: dict, eps=None) -> dict:
    doc = {
        "schema": SCHEMA,
        "kind": f"{kind}-result",
        "instance": instance,
        "tool_version": __version__,
        "tolerances": {"eps": resolve_eps(eps)},
    }
    doc.update(body)
    return doc


def edge_key_to_json(key: tuple[int, int]) -> str:
    return f"{key[0]}-{key[1]}"


def edge_params_to_json(edge_params: dict) -> dict:
    return {edge_key_to_json(k): v for k, v in sorted(edge_params.items())}
