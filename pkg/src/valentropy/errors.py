"""Exception hierarchy shared by all valentropy modules."""


class ValentropyError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(ValentropyError, ZeroDivisionError):
    """Division by the zero field element."""


class ParseError(ValentropyError, ValueError):
    """Malformed element text; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NonSquare(ValentropyError, ValueError):
    """A square matrix was required."""


class DimensionMismatch(ValentropyError, ValueError):
    """Vector/matrix/lattice dimensions are inconsistent."""


class NotASubmodule(ValentropyError, ValueError):
    """The alleged submodule is not contained in the ambient one."""


class SingularMap(ValentropyError, ValueError):
    """An injective map was required but the kernel is nontrivial."""


class NotInert(ValentropyError, ValueError):
    """The starting submodule is not inert under the endomorphism."""


class PreconditionFailed(ValentropyError, ValueError):
    """A named operation precondition does not hold."""


class ZeroVector(ValentropyError, ValueError):
    """A nonzero vector was required."""


class NotBlockTriangular(ValentropyError, ValueError):
    """The matrix is not block upper triangular at the requested split."""


class CompatibilityError(ValentropyError, ValueError):
    """Endomorphism matrix is not compatible with the torsion presentation."""


class SchemaError(ValentropyError, ValueError):
    """A job document does not validate against the expected schema."""


class UnknownSuite(ValentropyError, ValueError):
    """No verification suite with the requested name."""
