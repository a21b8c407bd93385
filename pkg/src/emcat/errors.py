"""Exception types shared across the package.

Validation errors carry enough structure to point at the offending entry;
budget errors always name the budget that was exhausted, so a caller can
distinguish "false" from "too big to decide".
"""
from __future__ import annotations


class EmcatError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(EmcatError):
    """A structure fails one of its defining laws."""


class MissingComposite(ValidationError):
    """A composable pair has no entry in the composition table."""

    def __init__(self, first: str, second: str):
        self.first = first
        self.second = second
        super().__init__(f"missing composite for {first!r} then {second!r}")


class LawViolation(ValidationError):
    """An equation required by the structure fails; carries a witness."""

    def __init__(self, law: str, witness: tuple, message: str = ""):
        self.law = law
        self.witness = witness
        super().__init__(message or f"{law} violated at {witness!r}")


class DanglingIndex(ValidationError):
    """A name or index refers to an object or arrow that does not exist."""

    def __init__(self, kind: str, name: object):
        self.kind = kind
        self.name = name
        super().__init__(f"unknown {kind}: {name!r}")


class AntisymmetryError(ValidationError):
    """A reflexive transitive relation identifies two distinct elements."""

    def __init__(self, a: str, b: str):
        self.pair = (a, b)
        super().__init__(f"antisymmetry fails: {a!r} <= {b!r} <= {a!r}")


class TargetMismatch(EmcatError):
    """Two maps that must share a target (or a source) do not."""


class UnsupportedOperation(EmcatError):
    """The selected instance does not provide this capability."""


class CyclicGraphUnsupported(UnsupportedOperation):
    """Path categories of graphs with directed cycles are infinite."""


class PushoutUnavailable(UnsupportedOperation):
    """The instance has no composite-forming pushout leg for its arrow object."""


class SizeBudgetExceeded(EmcatError):
    """An enumeration grew past its configured budget.

    Never swallowed: operations either complete exactly or raise this.
    """

    def __init__(self, budget: int, context: str = ""):
        self.budget = budget
        self.context = context
        msg = f"enumeration exceeded budget of {budget}"
        if context:
            msg += f" ({context})"
        super().__init__(msg)


class ParseError(EmcatError):
    """A text input is malformed; records file, line and column."""

    def __init__(self, message: str, path: str = "<input>", line: int = 0, col: int = 0):
        self.path = path
        self.line = line
        self.col = col
        super().__init__(f"{path}:{line}:{col}: {message}")
