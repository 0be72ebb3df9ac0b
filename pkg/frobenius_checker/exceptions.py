"""Exception hierarchy for the Frobenius checker."""

from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from .core.category import ValidationReport


class FrobeniusError(Exception):
    """Base class for every error raised by this package."""


class CategoryParseError(FrobeniusError):
    """Raised when a category text file cannot be parsed."""

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidCategoryError(FrobeniusError):
    """Raised when an operation needs a valid category and gets a broken one."""

    def __init__(self, report: "ValidationReport") -> None:
        self.report = report
        first = report.violations[0].message if report.violations else "unknown defect"
        super().__init__(
            f"invalid category ({len(report.violations)} violation(s)); first: {first}"
        )


class NotConnectedError(FrobeniusError):
    """Raised when a connected category is required."""


class BudgetExceededError(FrobeniusError):
    """Raised when an exhaustive search would exceed its budget."""


class InvariantSystemError(FrobeniusError):
    """Internal-consistency failure while deriving structure from an IS."""


class RingSpecError(FrobeniusError):
    """Raised for malformed or unsupported ring descriptors."""


class GeneratorSpecError(FrobeniusError):
    """Raised for unknown or malformed ``--gen`` specifications."""


class ModulusError(FrobeniusError):
    """Raised when a modulus is not an admissible prime."""


class DimensionMismatchError(FrobeniusError):
    """Raised when matrix or functor dimensions do not fit together."""


class FunctorError(FrobeniusError):
    """Raised when a functor or natural transformation breaks its laws."""


class PreconditionError(FrobeniusError):
    """Raised when an operation is called outside its documented domain."""


class SamplingError(FrobeniusError):
    """Raised when random structure generation fails after bounded retries."""


class OracleInconsistencyError(FrobeniusError):
    """Raised when oracle evidence contradicts a verdict."""
