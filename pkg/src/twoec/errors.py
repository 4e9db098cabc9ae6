"""Exception hierarchy shared by every stage of the pipeline."""


class TwoECError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(TwoECError):
    """Malformed input file (graph, costs, config or certificate)."""


class PreconditionViolation(TwoECError):
    """An operation was called on input outside its domain."""


class StructureViolation(TwoECError):
    """A structural claim checked after a transform did not hold."""


class NotHalfTriangle(PreconditionViolation):
    """The fractional solution is not a half-triangle solution.

    ``clause`` names the violated part of the definition.
    """

    def __init__(self, clause: str, detail: str = ""):
        self.clause = clause
        self.detail = detail
        msg = clause if not detail else f"{clause}: {detail}"
        super().__init__(msg)


class SizeCapExceeded(TwoECError):
    """Input larger than the configured enumeration or recursion cap."""


class InternalInvariantFailure(TwoECError):
    """An exact identity the construction relies on came out wrong."""


class PatternMassMismatch(InternalInvariantFailure):
    """Boundary pattern masses on the two sides of a glue do not agree."""


class DeficitNotCoverable(TwoECError):
    """Padding could not raise an occurrence to its target."""


class NoValidP(PreconditionViolation):
    """Every 1-edge lies in some 2-edge cut."""


class NoAdmissibleCut(PreconditionViolation):
    """No 2-edge cut has a 3-edge-connected side free of p."""


class MalformedCertificate(ParseError):
    """Certificate text cannot be parsed into a certificate."""
