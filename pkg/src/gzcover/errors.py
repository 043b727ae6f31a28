"""Exception hierarchy shared by every module of the package."""


class GZError(Exception):
    """Base class for domain errors raised by :mod:`gzcover`."""


class DimensionMismatch(GZError, ValueError):
    pass


class InvalidInput(GZError, ValueError):
    """Malformed or non-finite input data."""


class IndexOutOfRange(GZError, IndexError):
    pass


class ClusterAmbiguity(GZError):
    """Eigenvalue multiplicities cannot be decided at the requested tolerance."""


class NotRegular(GZError):
    pass


class NotStronglyRegular(GZError):
    pass


class NotInTower(GZError):
    pass


class RepeatedEigenvalue(GZError, ValueError):
    pass


class DuplicateWithinLevel(GZError, ValueError):
    pass


class IllegalPermutation(GZError, ValueError):
    """A deck transformation tried to swap blocks of different sizes."""


class SingularSemisimplePart(GZError, ValueError):
    pass


class FiberMismatch(GZError):
    pass


class NotGeneric(GZError):
    pass


class NoSolution(GZError):
    """Two cover points lie in different Z_D-orbits of the same fiber."""


class SamplingFailure(GZError):
    pass
