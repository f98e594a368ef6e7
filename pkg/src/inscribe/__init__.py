"""Inscribed/circumscribed polygons and polyhedron graphs.

A toolkit for the closed-chain inscription problem: convex polygons inscribed
in one convex polygon and circumscribed about another, the lift of that
problem to the faces of a polyhedron, and the conic-generation machinery that
cross-checks the solver.  See the README for an overview and the ``demos``
directory for worked examples.
"""

__version__ = "0.1.0"

from .errors import GeometryError
from .geom import ConvexPolygon, ParamSegment, PlanePoint, ProjLine
from .projective import FixedPointResult, MoebiusMap, ProjParam
from .solver import (
    PolygonInstance,
    SolutionPolygon,
    SolutionSet,
    brute_force_scan,
    enumerate_generalized,
    solve_all,
    solve_shift,
    theorem_check,
)
from .regular import RegularGonSpec, make_regular_instance
from .conics import Conic, conic_through_points, solve_via_conic
from .polyhedra import (
    InnerPolygons,
    InscribedGraphSolution,
    PolyhedronGraph,
    glued_octahedra,
    octahedron_example,
    parity_check,
    solve_graph,
    validate_graph,
)

__all__ = [
    "__version__",
    "GeometryError",
    "PlanePoint",
    "ProjLine",
    "ParamSegment",
    "ConvexPolygon",
    "MoebiusMap",
    "ProjParam",
    "FixedPointResult",
    "PolygonInstance",
    "SolutionPolygon",
    "SolutionSet",
    "solve_all",
    "solve_shift",
    "theorem_check",
    "brute_force_scan",
    "enumerate_generalized",
    "RegularGonSpec",
    "make_regular_instance",
    "Conic",
    "conic_through_points",
    "solve_via_conic",
    "PolyhedronGraph",
    "InnerPolygons",
    "InscribedGraphSolution",
    "validate_graph",
    "parity_check",
    "solve_graph",
    "octahedron_example",
    "glued_octahedra",
]
