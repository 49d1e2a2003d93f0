"""Exception types raised across the package."""


class PhotonLiftError(Exception):
    """Base class for all package errors."""


class DimensionError(PhotonLiftError, ValueError):
    """A matrix or vector has the wrong shape."""


class CapacityError(PhotonLiftError, ValueError):
    """A size limit was exceeded (subset bitmask, permutation cap, integer range)."""


class ArgumentError(PhotonLiftError, ValueError):
    """An argument is malformed or inconsistent with the others."""


class PreconditionError(PhotonLiftError, ValueError):
    """An input violates a numerical contract, e.g. a matrix that is not unitary."""


class DegenerateStateError(PhotonLiftError, ValueError):
    """A state truncation removed every term."""


class UnsupportedElementError(PhotonLiftError, TypeError):
    """A loss or gain element was passed where only unitary elements are allowed."""


class DegenerateMatrixError(PhotonLiftError, ValueError):
    """A matrix carries no information to decompose (e.g. all zeros)."""


class ParseError(PhotonLiftError, ValueError):
    """A text file could not be parsed; ``line`` is 1-based (0 if unknown)."""

    def __init__(self, message: str, line: int = 0, path=None):
        where = f"{path}:{line}: " if path else (f"line {line}: " if line else "")
        super().__init__(where + message)
        self.line = line
        self.path = path
