"""Exception types raised by the geometry oracles and experiment drivers."""


class GeometryError(Exception):
    """Base class for all geometry-level failures."""


class OriginNotInterior(GeometryError):
    """Gauge requested for a body that does not contain 0 in its interior."""


class NotInterior(GeometryError):
    """Ray origin fails the strict interiority margin test."""


class NotOnBoundary(GeometryError):
    """Point is not within tolerance of the body boundary."""


class InadmissibleNormal(GeometryError):
    """Unit vector is not an attained outer normal of the boundary."""


class UnboundedSection(GeometryError):
    """Sections orthogonal to this direction are unbounded."""


class LevelOutOfRange(GeometryError):
    """Section level lies outside the admissible open interval."""


class DegenerateSection(GeometryError):
    """Section measure is below the degeneracy threshold."""


class DegeneratePointSet(GeometryError):
    """Line fit requested for coincident or insufficient points."""


class ConeSectionUnbounded(GeometryError):
    """Recession-cone sections are unbounded or measure zero."""


class DegenerateCut(GeometryError):
    """Cut volume is zero or infinite where a finite positive value is required."""


class OriginInsideBody(GeometryError):
    """Cut gradient requires 0 outside the body."""


class NotGraphLike(GeometryError):
    """Operation requires a body that is the epigraph of a globally defined function."""


class NotApexCentered(GeometryError):
    """Operation requires apex-centered coordinates (asymptotic-cone apex at 0)."""


class EmptyShellIntersection(GeometryError):
    """Sphere of radius R does not meet the boundary (or the cone)."""
