"""Error taxonomy shared across the package.

Every failure mode that callers are expected to distinguish gets its own
class with a stable ``code`` string.  The CLI maps codes to exit status by
class only (never by message), so codes are part of the public contract.
"""

class RamlockError(Exception):
    """Base class; ``code`` is stable, the message is free-form."""

    code = "Error"

    def __init__(self, message=""):
        self.message = message
        super().__init__(message or self.code)


# -- input / validation errors (CLI exit 1) --------------------------------

class InvalidInput(RamlockError):
    code = "InvalidInput"

class EvenPrime(InvalidInput):
    code = "EvenPrime"

class NonEisenstein(InvalidInput):
    code = "NonEisenstein"

class ReducibleUnramPoly(InvalidInput):
    code = "ReducibleUnramPoly"

class NotAUnit(InvalidInput):
    code = "NotAUnit"

class BothDivisible(InvalidInput):
    code = "BothDivisible"

class RankUnsupported(InvalidInput):
    code = "RankUnsupported"

class NotEquivariant(InvalidInput):
    code = "NotEquivariant"

class NotExact(InvalidInput):
    code = "NotExact"

class SplitCase(InvalidInput):
    code = "SplitCase"

class OrderViolation(InvalidInput):
    code = "OrderViolation"

class InconsistentInput(InvalidInput):
    code = "InconsistentInput"

class FieldMismatch(InvalidInput):
    code = "FieldMismatch"


# -- resource / cap errors (CLI exit 2) -------------------------------------

class DomainFailure(RamlockError):
    """Hypothesis of a theorem or a configured cap blocks the computation."""

    code = "DomainFailure"

class DegreeCapExceeded(DomainFailure):
    code = "DegreeCapExceeded"

class PrecisionExhausted(DomainFailure):
    code = "PrecisionExhausted"

class ResidueFieldTooLarge(DomainFailure):
    code = "ResidueFieldTooLarge"

class CapTooSmall(DomainFailure):
    code = "CapTooSmall"

class CapReached(DomainFailure):
    """A capped search hit its cap; ``value`` carries the capped result."""

    code = "CapReached"

    def __init__(self, value, message=""):
        self.value = value
        super().__init__(message or f"cap reached at {value}")

class HypothesisViolated(DomainFailure):
    code = "HypothesisViolated"

class NoPthRoots(DomainFailure):
    code = "NoPthRoots"

class TorsionHypothesisFails(DomainFailure):
    code = "TorsionHypothesisFails"

class NotSupersingular(DomainFailure):
    code = "NotSupersingular"

class NotOrdinary(DomainFailure):
    code = "NotOrdinary"

class NotGoodReduction(DomainFailure):
    code = "NotGoodReduction"

class ModelNotMinimal(DomainFailure):
    """v(discriminant) >= 12: a twist by u = pi would shrink it."""

    code = "ModelNotMinimal"

class NotCM(DomainFailure):
    code = "NotCM"

class NotSplit(DomainFailure):
    code = "NotSplit"

class VeluUnsupported(DomainFailure):
    code = "VeluUnsupported"

class ConsistencyError(RamlockError):
    """Two internally computed routes disagreed; always a bug, never data."""

    code = "ConsistencyError"


VALIDATION_EXIT = 1
DOMAIN_EXIT = 2


def exit_code_for(err):
    """Deterministic CLI exit status for an error instance."""
    if isinstance(err, InvalidInput):
        return VALIDATION_EXIT
    if isinstance(err, RamlockError):
        return DOMAIN_EXIT
    raise TypeError(f"not a RamlockError: {err!r}")
