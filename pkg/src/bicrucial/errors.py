"""Exception types raised by the library."""


class BicrucialError(Exception):
    """Base class for all library errors."""


class InvalidInput(BicrucialError, ValueError):
    """Input is not a valid permutation / sequence of distinct values."""


class NotUudd(InvalidInput):
    """Permutation violates the up-up-down-down condition."""


class NotSquareFree(InvalidInput):
    """Permutation contains a square where a square-free one is required."""


class BadLength(BicrucialError, ValueError):
    """Requested length is outside the range a construction supports."""


class Unsatisfiable(BicrucialError):
    """No permutation satisfies the requested constraints."""


class NoWitness(BicrucialError, LookupError):
    """No embedded witness exists for the requested length."""


class VerificationFailed(BicrucialError, AssertionError):
    """A constructed permutation failed its final verification."""


class CapExceeded(BicrucialError, ValueError):
    """Brute-force enumeration was asked for a length above its cap."""


class Infeasible(BicrucialError):
    """No bicrucial permutation of the requested length exists."""


class Unsupported(BicrucialError):
    """A bicrucial permutation exists but the bounded search did not find one."""
