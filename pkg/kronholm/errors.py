"""Exception types raised by the calculator.

Every error carries an ``exit_code`` so the command line can map it without
knowing the concrete class.
"""
from typing import List, Optional


class KronholmError(Exception):
    """Base class for all calculator errors"""
    exit_code = 2

    def __init__(self, message: str = ""):
        super().__init__(message)
        self.message = message

    @property
    def kind(self) -> str:
        return type(self).__name__


class DegreeMismatch(KronholmError):
    """An element or map entry sits in the wrong bidegree."""


class PreconditionViolated(KronholmError):
    """Input breaks the hypothesis of the basis-update step."""


class NoTopImage(KronholmError):
    """Top-cone reduction was asked for but no image touches the top cone."""


class NotRealizable(KronholmError):
    """Top-cone differential that is not onto; no Rep(C2)-complex has one."""
    exit_code = 3

    def __init__(self, message: str = "", stage: Optional[int] = None):
        super().__init__(message)
        self.stage = stage

    def __str__(self):
        if self.stage is None:
            return self.message
        return f"stage {self.stage}: {self.message}"


class UnknownLabel(KronholmError):
    def __init__(self, label: str, stage: Optional[int] = None):
        where = f" at stage {stage}" if stage is not None else ""
        super().__init__(f"unknown generator label '{label}'{where}")
        self.label = label
        self.stage = stage


class InvalidOrdering(KronholmError):
    def __init__(self, message: str = "", index: Optional[int] = None):
        super().__init__(message)
        self.index = index


class ParseError(KronholmError):
    """Grammar error; ``position`` is a 0-based offset into the parsed text."""

    def __init__(self, message: str, position: int = 0,
                 line: Optional[int] = None, column: Optional[int] = None):
        super().__init__(message)
        self.position = position
        self.line = line
        self.column = column

    def __str__(self):
        if self.line is not None:
            return f"{self.message} (line {self.line}, column {self.column})"
        return f"{self.message} (position {self.position})"


class ValidationError(KronholmError):
    def __init__(self, violations: List["object"]):
        lines = "; ".join(str(v) for v in violations)
        super().__init__(f"{len(violations)} violation(s): {lines}")
        self.violations = list(violations)


class ConfigError(KronholmError):
    """Bad setting value (environment or settings file)."""
