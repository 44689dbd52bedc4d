"""Exception hierarchy shared by every grasspack module."""


class GrassError(ValueError):
    """Base class for all grasspack errors."""


class RankDeficient(GrassError):
    pass


class DimensionMismatch(GrassError):
    pass


class TooFewSubspaces(GrassError):
    pass


class RequiresSmallHalf(GrassError):
    pass


class BadDimensions(GrassError):
    pass


class NotOrthonormal(GrassError):
    pass


class NotAPlane(GrassError):
    pass


class NotUnit(GrassError):
    pass


class UnsupportedN(GrassError):
    pass


class BadParams(GrassError):
    pass


class OrbitOverflow(GrassError):
    pass


class ClosureOverflow(GrassError):
    pass


class TooLarge(GrassError):
    pass


class NoRecord(GrassError):
    pass


class GpackFormatError(GrassError):
    """Raised when a .gpack or pairs file cannot be parsed."""
