"""emcat: a workbench for finite categories carrying a factorization system.

The package computes discrete reflections, neighborhoods, colimits,
adjunctions and power objects over five concrete settings (categories,
two poset systems, reflexive graphs, finite sets) and ships a theorem
suite that checks the calculus on enumerated corpora.
"""
from .errors import (
    AntisymmetryError,
    CyclicGraphUnsupported,
    DanglingIndex,
    EmcatError,
    LawViolation,
    MissingComposite,
    ParseError,
    PushoutUnavailable,
    SizeBudgetExceeded,
    TargetMismatch,
    UnsupportedOperation,
    ValidationError,
)

__all__ = [
    "AntisymmetryError",
    "CyclicGraphUnsupported",
    "DanglingIndex",
    "EmcatError",
    "LawViolation",
    "MissingComposite",
    "ParseError",
    "PushoutUnavailable",
    "SizeBudgetExceeded",
    "TargetMismatch",
    "UnsupportedOperation",
    "ValidationError",
]
