"""Exception hierarchy shared by every module."""


class SemiringLabError(Exception):
    """Base class for all library errors."""


class ShapeError(SemiringLabError):
    """A table has the wrong shape or an out-of-range entry."""


class FormatError(SemiringLabError):
    """A JSON document is unreadable or lacks a required field."""


class AxiomViolation(SemiringLabError):
    """A structural law fails; carries the law name and a witness tuple."""

    def __init__(self, axiom, witness, message=None):
        self.axiom = axiom
        self.witness = tuple(witness)
        super().__init__(message or f"axiom {axiom!r} fails at {self.witness}")

    def to_dict(self):
        return {"error": "AxiomViolation", "axiom": self.axiom, "witness": list(self.witness)}


class KindMismatch(SemiringLabError):
    pass


class BadParams(SemiringLabError):
    pass


class SizeCapExceeded(SemiringLabError):
    def __init__(self, what, size, cap):
        self.what, self.size, self.cap = what, size, cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


class NotIdempotent(SemiringLabError):
    pass


class ZeroIdempotent(SemiringLabError):
    pass


class NotASubsemimodule(SemiringLabError):
    def __init__(self, reason, witness):
        self.reason = reason
        self.witness = tuple(witness)
        super().__init__(f"not a subsemimodule ({reason}) at {self.witness}")


class CongruenceLimitExceeded(SemiringLabError):
    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"more than {cap} congruences; raise the congruence cap")


class SearchBudgetExceeded(SemiringLabError):
    def __init__(self, needed, budget):
        self.needed, self.budget = needed, budget
        super().__init__(f"search needs {needed} candidates, budget is {budget}")


class PreconditionFailed(SemiringLabError):
    pass


class NotAPoset(SemiringLabError):
    pass


class NotALattice(SemiringLabError):
    def __init__(self, pair, which):
        self.pair = tuple(pair)
        self.which = which
        super().__init__(f"elements {self.pair} have no {which}")


class Unbounded(SemiringLabError):
    pass


class NotComparable(SemiringLabError):
    pass


class NotDistributive(SemiringLabError):
    pass


class NotBooleanBase(SemiringLabError):
    pass


class InternalError(SemiringLabError):
    """An invariant that should hold by construction was violated (a bug)."""
