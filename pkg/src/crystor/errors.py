"""Error taxonomy shared by the library and the CLI.

Every error carries a stable identifier (its class name) that the CLI
prints verbatim, and an exit code: 1 for bad input or misuse, 3 when an
enumeration would exceed the configured budget.  Exit code 2 is reserved
for invariant-suite failures, which are reported, not raised.
"""


class ArtifactError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1

    @property
    def identifier(self) -> str:
        return type(self).__name__


class ParseError(ArtifactError):
    """Input text could not be parsed; carries a 1-based position."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        if line:
            message = f"line {line}, col {col}: {message}"
        super().__init__(message)


class ShapeMismatch(ArtifactError):
    """Operands have incompatible dimensions, moduli or ranks."""


class SingularMatrix(ArtifactError):
    """A square matrix required to have nonzero determinant does not."""


class BadModulus(ArtifactError):
    """A modulus that must be >= 2 is not."""


class BadLevel(ArtifactError):
    """A torsion level exponent that must be >= 1 is not."""


class BadInput(ArtifactError):
    """A scalar argument is outside its documented range."""


class NotPrime(ArtifactError):
    """An argument required to be prime is not."""


class NotSymmetric(ArtifactError):
    """The valuation matrix is not symmetric."""


class NotPositiveDefinite(ArtifactError):
    """A leading principal minor of the valuation matrix is <= 0."""

    def __init__(self, minor_index: int, minor_value: int):
        self.minor_index = minor_index
        self.minor_value = minor_value
        super().__init__(
            f"mu: leading principal minor {minor_index} is {minor_value} "
            "(must be > 0)"
        )


class WeightOutOfRange(ArtifactError):
    """A twist would move a weight outside {0, 1}."""


class NotAMorphism(ArtifactError):
    """Matrices fail to commute with the monodromy maps."""


class NotStabilized(ArtifactError):
    """A stabilization cap was too small; reports the last level that grew."""

    def __init__(self, last_growth: int, cap: int):
        self.last_growth = last_growth
        self.cap = cap
        super().__init__(
            f"still growing at level {last_growth} with cap {cap}; raise the cap"
        )


class BudgetExceeded(ArtifactError):
    """An enumeration would exceed the configured element budget."""

    exit_code = 3
