"""Exception types raised across the package."""


class EntBoundsError(Exception):
    """Base class for all errors raised by entbounds."""


class NonSquare(EntBoundsError, ValueError):
    pass


class NonHermitian(EntBoundsError, ValueError):
    pass


class NotPositiveSemidefinite(EntBoundsError, ValueError):
    pass


class EmptyMatrix(EntBoundsError, ValueError):
    pass


class ConvergenceError(EntBoundsError, RuntimeError):
    pass


class DimensionMismatch(EntBoundsError, ValueError):
    pass


class InvalidState(EntBoundsError, ValueError):
    """Amplitudes are non-finite, zero, of the wrong length, or badly normalized."""


class DegenerateSuperposition(EntBoundsError, ValueError):
    """The superposed vector has (numerically) vanishing norm."""


class InvalidEpsilon(EntBoundsError, ValueError):
    pass


class DimensionTooLarge(EntBoundsError, ValueError):
    pass


class IndexOutOfRange(EntBoundsError, IndexError):
    pass


class DuplicateIndex(EntBoundsError, ValueError):
    pass


class SpectrumNotNormalized(EntBoundsError, ValueError):
    pass


class NotBiorthogonal(EntBoundsError, ValueError):
    pass


class AmplitudeTooSmall(EntBoundsError, ValueError):
    """An amplitude fell below the floor where the negativity bounds diverge."""


class DimOutOfRange(EntBoundsError, ValueError):
    pass


class SupportTooLarge(EntBoundsError, ValueError):
    pass


class FloorOutOfRange(EntBoundsError, ValueError):
    pass


class ConfigInvalid(EntBoundsError, ValueError):
    pass
