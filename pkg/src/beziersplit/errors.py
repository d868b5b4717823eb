"""Exception types shared across the package."""


class CurveError(Exception):
    """Base class for numeric-domain errors raised by this package."""


class DegenerateInterval(CurveError):
    """Interval endpoints are not strictly increasing."""


class DegreeZero(CurveError):
    """Operation requires degree >= 1."""


class DegreeOrder(CurveError):
    """Degree arguments violate the required ordering (e.g. m < n)."""


class DegreeTooHigh(CurveError):
    """Degree exceeds the configured conditioning cap."""


class DuplicateParams(CurveError):
    """Curve parameters are not pairwise distinct."""


class DimensionMismatch(CurveError):
    """Curves or points live in different ambient dimensions."""


class ToleranceUnreachable(CurveError):
    """Adaptive search cannot satisfy the tolerance within its guards."""


class UnsupportedTargetDegree(CurveError):
    """Target degree is outside the supported set."""


class NotPlanar(CurveError):
    """Operation is defined for planar (2-D) curves only."""


class DegenerateSegment(CurveError):
    """Line segment has (numerically) zero length."""


class AllZeroCoefficients(CurveError):
    """Polynomial is identically zero; the root set is all reals."""


class UnsupportedDegree(CurveError):
    """Analytic feature formulas exist only for degrees <= 2."""
