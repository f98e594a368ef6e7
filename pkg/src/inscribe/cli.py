"""Command-line interface.

Subcommands read a JSON instance document from a file (or stdin with ``-``)
and write a JSON result document to stdout; ``render`` turns a result
document into an SVG file.  Exit codes: 0 success, 2 input or validation
error, 3 degenerate-geometry diagnostic (the document still carries the
diagnostics).  ``INSCRIBE_EPS`` overrides the default predicate tolerance;
``--eps`` overrides it per invocation.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import __version__
from .conics import fit_locus_conic, locus_samples
from .errors import DegenerateChain, GeometryError, ParallelLines
from .geom import PlanePoint, intersect_lines, line_through
from .jsonio import (
    DocumentError,
    SCHEMA,
    check_envelope,
    conic_chain_payload,
    dumps,
    edge_params_to_json,
    instance_document,
    loads,
    parse_conic_chain_payload,
    parse_generalized_payload,
    parse_polygon_payload,
    parse_polyhedron_payload,
    point_to_json,
    polygon_payload,
    polyhedron_payload,
    result_document,
)
from .polyhedra import (
    face_planar_solutions,
    octahedron_example,
    parity_check,
    solve_graph,
    validate_graph,
)
from .regular import RegularGonSpec, compass_construction, make_regular_instance, shared_height
from .solver import (
    PolygonInstance,
    brute_force_scan,
    enumerate_generalized,
    line_carrier,
    solve_all,
    solve_shift,
    theorem_check,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DEGENERATE = 3


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise DocumentError(f"cannot read input: {exc}", where="input") from exc


def _emit(doc: dict) -> None:
    sys.stdout.write(dumps(doc))


def _solution_json(sol) -> dict:
    return {
        "shift": sol.shift,
        "params": list(sol.params),
        "points": [point_to_json(p) for p in sol.points] if sol.points else None,
        "valid": sol.valid,
        "reasons": list(sol.reasons),
    }


def cmd_solve_polygon(args) -> int:
    doc = loads(_read_input(args.input))
    check_envelope(doc, "polygon")
    A, C = parse_polygon_payload(doc["payload"])
    result = solve_all(A, C, eps=args.eps)
    report = theorem_check(A, C, eps=args.eps)
    body = {
        "solutions": [_solution_json(s) for s in result.solutions],
        "counts": {
            "total": result.total,
            "per_shift": {str(k): v for k, v in sorted(result.per_shift_counts.items())},
        },
        "diagnostics": {
            "bound_satisfied": report.bound_satisfied,
            "identity_shifts": sorted(k for k, flag in result.identity_flags.items() if flag),
        },
    }
    if args.oracle:
        per_shift = {}
        worst = 0.0
        for k in range(A.n):
            inst = PolygonInstance(A, C, k, validate=False)
            roots = brute_force_scan(inst, grid_size=args.grid, eps=args.eps)
            shift_result = solve_shift(inst, eps=args.eps)
            fixed = sorted(
                s.params[0]
                for s in shift_result.candidates
                if math.isfinite(s.params[0]) and 0.0 < s.params[0] < 1.0
            )
            per_shift[str(k)] = {"scan_roots": roots, "fixed_params": fixed}
            if len(roots) == len(fixed):
                worst = max(worst, max((abs(a - b) for a, b in zip(roots, fixed)), default=0.0))
            else:
                worst = math.inf
        body["oracle"] = {
            "per_shift": per_shift,
            "max_discrepancy": worst if math.isfinite(worst) else None,
            "consistent": math.isfinite(worst),
        }
    _emit(result_document("polygon", doc, body, eps=args.eps))
    return EXIT_DEGENERATE if body["diagnostics"]["identity_shifts"] else EXIT_OK


def cmd_gen_regular(args) -> int:
    if args.n < 3:
        raise DocumentError(f"regular polygon requires n >= 3, got {args.n}", where="n")
    if args.a <= 0:
        raise DocumentError(f"half-side length must be positive, got {args.a}", where="a")
    family = make_regular_instance(RegularGonSpec(args.n, args.a))
    instance = instance_document(
        "polygon",
        polygon_payload(family.A, family.C),
        metadata={"generator": "regular", "n": args.n, "a": args.a},
    )
    body = {
        "expected": {
            "x_values": list(family.x_values),
            "shared_height": shared_height(args.n, args.a),
            "solutions": [
                {
                    "shift": shift,
                    "params": list(params),
                    "points": [point_to_json(p) for p in poly],
                }
                for poly, params, shift in zip(family.polygons, family.params, family.shifts)
            ],
        }
    }
    if args.construct:
        if args.n == 4:
            body["construction"] = {
                "note": "x = 2a/3; mark the third of the side directly",
                "x": 2.0 * args.a / 3.0,
            }
        else:
            trace = compass_construction(args.n, args.a)
            body["construction"] = {
                "x": trace.x,
                "points": {
                    name: point_to_json(getattr(trace, name))
                    for name in ("a0", "a1", "a2", "e", "foot_c", "foot_d", "g", "f", "b")
                },
            }
    _emit(result_document("gen-regular", instance, body))
    return EXIT_OK


def cmd_gen_octahedron(args) -> int:
    g, gamma, betas = octahedron_example()
    instance = instance_document(
        "polyhedron",
        polyhedron_payload(g, gamma),
        metadata={"generator": "octahedron"},
    )
    body = {
        "expected": {
            "solutions": [
                {"edge_params": edge_params_to_json(b.edge_params)} for b in betas
            ]
        }
    }
    _emit(result_document("gen-octahedron", instance, body))
    return EXIT_OK


def cmd_solve_polyhedron(args) -> int:
    doc = loads(_read_input(args.input))
    check_envelope(doc, "polyhedron")
    g, gamma = parse_polyhedron_payload(doc["payload"])
    report = validate_graph(g, eps=args.eps)
    if not report.ok:
        raise DocumentError(
            "invalid polyhedron: "
            + "; ".join(
                report.planarity_violations
                + report.convexity_violations
                + report.edge_face_violations
            ),
            where="payload",
        )
    parity = parity_check(g)
    per_face = face_planar_solutions(g, gamma, eps=args.eps)
    solutions = solve_graph(g, gamma, eps=args.eps, match_tol=args.match_tol)
    body = {
        "solutions": [
            {
                "edge_params": edge_params_to_json(s.edge_params),
                "per_face_choice": {str(k): v for k, v in sorted(s.per_face_choice.items())},
            }
            for s in solutions
        ],
        "counts": {
            "global": len(solutions),
            "per_face": [len(entries) for entries in per_face],
        },
        "diagnostics": {
            "parity_all_even": parity.all_even,
            "parity_warning": None
            if parity.all_even
            else "odd face count at some vertex: alternating solutions cannot close",
            "euler_characteristic": report.euler_characteristic,
        },
    }
    _emit(result_document("polyhedron", doc, body, eps=args.eps))
    return EXIT_OK


def cmd_conic_locus(args) -> int:
    doc = loads(_read_input(args.input))
    check_envelope(doc, "conic-chain")
    if args.samples < 7:
        raise DocumentError(f"need at least 7 samples, got {args.samples}", where="samples")
    lines, centers = parse_conic_chain_payload(doc["payload"])
    carriers = [line_carrier(l) for l in lines]
    try:
        samples = locus_samples(carriers, centers, samples=args.samples, eps=args.eps)
        conic, max_residual = fit_locus_conic(samples, eps=args.eps)
    except DegenerateChain as exc:
        _emit(
            result_document(
                "conic-locus", doc, {"error": {"message": str(exc), "kind": "degenerate-chain"}}
            )
        )
        return EXIT_DEGENERATE
    membership = {
        "first_center": conic.residual_at(centers[0]),
        "last_center": conic.residual_at(centers[-1]),
    }
    if len(lines) == 3:
        # For a triangle chain the locus also passes through the corner of
        # the two non-swept lines and two auxiliary cross intersections.
        try:
            corner = intersect_lines(lines[1], lines[2], args.eps)
            p_marker = intersect_lines(lines[2], line_through(centers[0], centers[1]), args.eps)
            q_marker = intersect_lines(lines[1], line_through(centers[2], centers[1]), args.eps)
            membership["corner"] = conic.residual_at(corner)
            membership["p"] = conic.residual_at(p_marker)
            membership["q"] = conic.residual_at(q_marker)
        except (ParallelLines, GeometryError):
            pass
    residuals = [conic.residual_at(p) for p in samples]
    body = {
        "conic": list(conic.coefficients()),
        "degenerate": conic.is_degenerate(args.eps),
        "samples": [point_to_json(p) for p in samples],
        "residuals": {
            "max": max_residual,
            "mean": sum(residuals) / len(residuals),
            "membership": membership,
        },
    }
    _emit(result_document("conic-locus", doc, body, eps=args.eps))
    return EXIT_OK


def cmd_enumerate_generalized(args) -> int:
    doc = loads(_read_input(args.input))
    check_envelope(doc, "generalized")
    lines, points = parse_generalized_payload(doc["payload"])
    if len(lines) > 5:
        raise DocumentError(
            f"generalized enumeration is limited to n <= 5, got {len(lines)}", where="payload.lines"
        )
    result = enumerate_generalized(lines, points, eps=args.eps)
    body = {
        "count": result.count,
        "bound": result.bound,
        "infinite_family": result.infinite_family,
        "subproblems": result.subproblems,
        "solutions": [[point_to_json(p) for p in poly] for poly in result.solutions],
    }
    _emit(result_document("generalized", doc, body, eps=args.eps))
    return EXIT_OK


def cmd_render(args) -> int:
    from . import svg

    doc = loads(_read_input(args.input))
    kind = doc.get("kind")
    if doc.get("schema") != SCHEMA:
        raise DocumentError(f"unsupported schema {doc.get('schema')!r}", where="schema")
    if kind in ("polygon-result", "gen-regular-result"):
        payload = doc.get("instance", {}).get("payload", {})
        outer = payload.get("outer")
        inner = payload.get("inner")
        if not outer or not inner:
            raise DocumentError("result document carries no polygon instance", where="instance")
        solutions = doc.get("solutions") or doc.get("expected", {}).get("solutions", [])
        polys = [s["points"] for s in solutions if s.get("points")]
        content = svg.render_polygon_scene(outer, polys, inner)
    elif kind == "conic-locus-result":
        samples = doc.get("samples")
        if samples is None:
            raise DocumentError("conic result carries no samples", where="samples")
        centers = doc.get("instance", {}).get("payload", {}).get("centers", [])
        content = svg.render_locus_scene(samples, centers)
    elif kind in ("polyhedron-result", "gen-octahedron-result"):
        payload = doc.get("instance", {}).get("payload", {})
        vertices = payload.get("vertices")
        faces = payload.get("faces")
        if not vertices or not faces:
            raise DocumentError("result document carries no polyhedron instance", where="instance")
        edges = sorted(
            {
                tuple(sorted((f[i], f[(i + 1) % len(f)])))
                for f in faces
                for i in range(len(f))
            }
        )
        raw = doc.get("solutions") or doc.get("expected", {}).get("solutions", [])
        solutions = []
        for entry in raw:
            edge_params = {}
            for key, t in entry.get("edge_params", {}).items():
                a, b = key.split("-")
                edge_params[(int(a), int(b))] = float(t)
            solutions.append(edge_params)
        content = svg.render_polyhedron_scene(vertices, edges, solutions, axis=args.axis)
    else:
        raise DocumentError(f"cannot render document kind {kind!r}", where="kind")
    try:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(content)
    except OSError as exc:
        raise DocumentError(f"cannot write output: {exc}", where="out") from exc
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inscribe",
        description="Solve inscribed/circumscribed polygon and polyhedron-graph instances.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_input=True):
        if with_input:
            p.add_argument("input", nargs="?", default="-", help="instance file or - for stdin")
        p.add_argument("--eps", type=float, default=None, help="predicate tolerance override")

    p = sub.add_parser("solve-polygon", help="solve a planar instance over all shifts")
    add_common(p)
    p.add_argument("--oracle", action="store_true", help="attach grid-scan oracle comparison")
    p.add_argument("--grid", type=int, default=10_000, help="oracle grid size")
    p.set_defaults(func=cmd_solve_polygon)

    p = sub.add_parser("gen-regular", help="emit the regular-polygon instance and its four solutions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=float, default=1.0, help="half side length")
    p.add_argument("--construct", action="store_true", help="attach the compass construction trace")
    p.set_defaults(func=cmd_gen_regular)

    p = sub.add_parser("gen-octahedron", help="emit the octahedron instance and its four graphs")
    p.set_defaults(func=cmd_gen_octahedron)

    p = sub.add_parser("solve-polyhedron", help="solve an inscribed-graph instance")
    add_common(p)
    p.add_argument("--match-tol", type=float, default=1e-7, help="shared-edge agreement tolerance")
    p.set_defaults(func=cmd_solve_polyhedron)

    p = sub.add_parser("conic-locus", help="sample and fit the chain locus conic")
    add_common(p)
    p.add_argument("--samples", type=int, default=20)
    p.set_defaults(func=cmd_conic_locus)

    p = sub.add_parser("enumerate-generalized", help="count full-line polygons over all arrangements")
    add_common(p)
    p.set_defaults(func=cmd_enumerate_generalized)

    p = sub.add_parser("render", help="render a result document to SVG")
    add_common(p)
    p.add_argument("--out", required=True, help="output SVG path")
    p.add_argument("--axis", choices=("x", "y", "z"), default="z", help="projection axis")
    p.set_defaults(func=cmd_render)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DocumentError as exc:
        sys.stdout.write(dumps(exc.as_json()))
        return EXIT_INPUT
    except GeometryError as exc:
        sys.stdout.write(
            dumps({"error": {"message": str(exc), "where": type(exc).__name__}})
        )
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
