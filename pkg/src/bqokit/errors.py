"""Exceptions and the small verdict type shared by the checkers."""

from dataclasses import dataclass
from typing import Any


class BqoError(Exception):
    pass


class InvalidSequence(BqoError, ValueError):
    pass


class OutOfRange(BqoError, IndexError):
    pass


class InvalidConcatenation(BqoError, ValueError):
    pass


class WindowError(BqoError, ValueError):
    """A sequence or family does not fit its declared window."""


class WindowExhausted(BqoError):
    """The length bound L was reached while the search still had live branches.

    ``partial`` holds whatever was found inside the window before giving up.
    """

    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


class InvalidRelation(BqoError, ValueError):
    pass


class SizeMismatch(BqoError, ValueError):
    pass


class InsufficientPrefix(BqoError, ValueError):
    pass


class PreconditionFailed(BqoError):
    """A checker's hypothesis does not hold; ``witness`` shows why."""

    kind = "precondition"

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class NotSmooth(PreconditionFailed):
    kind = "not-smooth"


class NotPerfect(PreconditionFailed):
    kind = "not-perfect"


class ValuesOutsideCodomain(PreconditionFailed):
    kind = "values-outside-codomain"


class NotABlock(PreconditionFailed):
    kind = "not-a-block"


class InvariantViolation(BqoError, AssertionError):
    """Something the mathematics guarantees did not happen. Always a bug."""


@dataclass(frozen=True)
class Check:
    """Outcome of a finite verification: truthy iff it passed.

    A failed check carries the first counterexample in canonical order.
    """

    ok: bool
    witness: Any = None
    reason: str = ""

    def __bool__(self):
        return self.ok

    @classmethod
    def passed(cls):
        return cls(True)

    @classmethod
    def failed(cls, witness, reason=""):
        return cls(False, witness, reason)


class InvalidCode(BqoError, ValueError):
    pass
