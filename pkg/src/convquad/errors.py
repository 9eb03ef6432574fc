"""Exception hierarchy.

Every error carries an ``exit_code`` so the command line front end can map
failures without a lookup table.
"""


class QuadricError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class InvalidInputError(QuadricError, ValueError):
    """Malformed input: wrong shapes, missing fields, dimension mismatch."""

    exit_code = 3


class DegenerateQuadricError(InvalidInputError):
    """The quadratic part vanishes identically (degree < 2)."""

    def __init__(self, msg="degree < 2"):
        super().__init__(msg)


class EmptyLocusError(QuadricError):
    """The equation has no real solutions."""

    exit_code = 2

    def __init__(self, msg="empty real locus"):
        super().__init__(msg)


class GeometryError(QuadricError):
    """A geometric precondition of an operation does not hold."""

    exit_code = 4


class NotOrthonormalError(GeometryError):
    def __init__(self, msg="not orthonormal"):
        super().__init__(msg)


class RankDeficientError(GeometryError):
    def __init__(self, msg="rank deficient"):
        super().__init__(msg)


class RayNeverExitsError(GeometryError):
    def __init__(self, msg="ray never exits"):
        super().__init__(msg)


class ConvergenceError(QuadricError):
    """An iterative routine hit its iteration cap. Indicates a bug."""

    def __init__(self, msg="no convergence"):
        super().__init__(msg)
