"""Exception types shared across the package.

Checks that are *queries* (validators, acyclicity tests, certificate
verification) never raise on a failed check — they return a report.
Exceptions are reserved for violated preconditions and malformed input.
"""


class NilcertError(Exception):
    """Base class for all package-specific errors."""


class ShapeMismatch(NilcertError):
    """Matrix or complex dimensions are inconsistent."""


class DimensionMismatch(ShapeMismatch):
    """A morphism's shape does not match its endpoints."""


class NotSurjective(NilcertError):
    """split_surjection was called on a non-surjective matrix."""


class NotNilpotent(NilcertError):
    """The endomorphism is not nilpotent."""


class NotFree(NilcertError):
    """free_rank was requested for a module with torsion."""


class NotASubmodule(NilcertError):
    """The inner span is not contained in the outer span."""


class NotAComplex(NilcertError):
    """Consecutive differentials do not compose to zero."""


class NotChainIso(NilcertError):
    """The supplied degreewise map is not a chain isomorphism."""


class InvalidObject(NilcertError):
    """An object failed validation on registration; carries the report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class BadWitness(NilcertError):
    """A relation witness failed re-verification; names the equation."""


class UnknownKey(NilcertError):
    """A formal sum references a key that is not registered."""


class HypothesisFailed(NilcertError):
    """The forgetful image of the input is not certified zero."""
