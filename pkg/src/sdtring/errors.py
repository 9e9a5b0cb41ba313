"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class RingError(Exception):
    """Base class for all errors raised by sdtring."""


class AxiomViolation(RingError):
    def __init__(self, kind: str, witness: tuple):
        self.kind = kind
        self.witness = tuple(int(w) for w in witness)
        super().__init__(f"ring axiom {kind!r} fails at {self.witness}")


class CapExceeded(RingError):
    pass


class OrderOverflow(RingError):
    def __init__(self, order: int, cap: int, span: tuple[int, int] | None = None):
        self.order = order
        self.cap = cap
        self.span = span
        where = f" at bytes {span[0]}..{span[1]}" if span else ""
        super().__init__(f"ring order {order} exceeds cap {cap}{where}")


class NotAnIdeal(RingError):
    def __init__(self, reason: str, pair: tuple):
        self.reason = reason
        self.pair = tuple(int(p) for p in pair)
        super().__init__(f"not a two-sided ideal ({reason}) at {self.pair}")


class NotIdempotent(RingError):
    pass


class InternalInvariant(RingError):
    """A computed object failed a sanity check; always an implementation bug."""


class ImplicationViolation(RingError):
    def __init__(self, premise: str, conclusion: str, ring: str):
        self.premise = premise
        self.conclusion = conclusion
        self.ring = ring
        super().__init__(f"{ring}: {premise} holds but {conclusion} does not")


class CharacteristicError(RingError):
    pass


class PreconditionNotSDT(RingError):
    pass


class PreconditionFailed(RingError):
    def __init__(self, condition: str, message: str = ""):
        self.condition = condition
        super().__init__(message or f"precondition failed: {condition}")


class HypothesisViolation(RingError):
    pass


class TwoNotUnit(RingError):
    pass


class CompatibilityViolation(RingError):
    pass


class LiftFailed(RingError):
    pass


class ParseError(RingError):
    def __init__(self, byte_offset: int, expected: str, found: str):
        self.byte_offset = byte_offset
        self.expected = expected
        self.found = found
        super().__init__(f"at byte {byte_offset}: expected {expected}, found {found}")
