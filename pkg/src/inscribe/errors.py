"""Exception hierarchy for geometric failures.

Every error raised on a geometric precondition derives from
:class:`GeometryError`, which itself derives from ``ValueError`` so that
callers who do not care about the fine distinction can catch one type.
"""


class GeometryError(ValueError):
    """Base class for all geometric failures."""


class CoincidentPoints(GeometryError):
    """Two points expected to be distinct coincide within tolerance."""


class ParallelLines(GeometryError):
    """Two lines expected to meet are parallel within tolerance."""


class OffLine(GeometryError):
    """A point expected on a line lies off it beyond tolerance."""


class NotStrictlyConvex(GeometryError):
    """A vertex list fails the strict-convexity requirements."""


class DegenerateCevians(GeometryError):
    """The two cevians of the ratio inequality are parallel."""


class TransversalMiss(GeometryError):
    """The transversal fails to cut both required open segments."""


class DegenerateMap(GeometryError):
    """A fractional-linear map has a vanishing determinant."""


class TooManyCoincidences(GeometryError):
    """Fewer than three of the four cross-ratio arguments are distinct."""


class CenterOnLine(GeometryError):
    """A projection center lies on one of the lines it should map between."""


class DomainError(GeometryError):
    """An argument falls outside the closed-form formula's domain."""


class SingularDenominator(GeometryError):
    """A closed-form denominator vanishes within tolerance."""


class NoRealRoots(GeometryError):
    """A quadratic expected to have real roots has none."""


class RootsOutOfRange(GeometryError):
    """A quadratic has real roots but not in the admissible interval."""


class RankDeficient(GeometryError):
    """The incidence system does not determine a unique conic."""


class LineOnConic(GeometryError):
    """A line is a component of a degenerate conic (infinite intersection)."""


class DegenerateChain(GeometryError):
    """Too few usable samples survive a locus sweep."""


class PointsNotOnConic(GeometryError):
    """Points expected on a conic lie off it beyond tolerance."""


class NotPerspective(GeometryError):
    """Two triangles are not perspective from a point within tolerance."""


class OffPlane(GeometryError):
    """A point expected in a face plane lies off it beyond tolerance."""
