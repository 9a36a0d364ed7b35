"""Exception hierarchy for grc.

Every error is a ``ValueError`` so callers that only care about bad input can keep
catching that.
"""

from __future__ import annotations

from typing import Any


class GrcError(ValueError):
    """Base class for all grc errors.

    ``subject`` names the gate or space a loader error refers to, ``step`` the pipeline
    step an elaboration or analysis error refers to.
    """

    def __init__(self, message: str, *, subject: str | None = None, step: int | None = None):
        super().__init__(message)
        self.message = message
        self.subject = subject
        self.step = step

    def __str__(self) -> str:
        prefix = []
        if self.step is not None:
            prefix.append(f"step {self.step}")
        if self.subject:
            prefix.append(self.subject)
        if prefix:
            return f"{', '.join(prefix)}: {self.message}"
        return self.message

    def located(self, *, subject: str | None = None, step: int | None = None) -> GrcError:
        """Attach location info (keeps any already set) and return self for re-raising."""
        if self.subject is None and subject is not None:
            self.subject = subject
        if self.step is None and step is not None:
            self.step = step
        return self


class InvalidSpace(GrcError):
    """A label space is empty, has duplicate labels, or a label is malformed."""


class KeyOutsideSpace(GrcError):
    pass


class MassExceedsOne(GrcError):
    pass


class NegativeEntry(GrcError):
    pass


class ShapeMismatch(GrcError):
    pass


class NotColumnSubstochastic(GrcError):
    pass


class NotSubpermutation(GrcError):
    pass


class NotAPartition(GrcError):
    pass


class NotPartitioned(GrcError):
    """Equivalent rows disagree on a codomain block sum."""

    def __init__(self, message: str, *, rows: tuple[Any, Any] | None = None,
                 block: Any = None, **kwargs):
        super().__init__(message, **kwargs)
        self.rows = rows
        self.block = block


class NotDeterministic(GrcError):
    pass


class NotClosedTransformation(GrcError):
    pass


class NotADistribution(GrcError):
    pass


class ParseError(GrcError):
    """Malformed circuit document. ``position`` is (line, column) or a dotted path."""

    def __init__(self, message: str, *, position: tuple[int, int] | str | None = None,
                 **kwargs):
        super().__init__(message, **kwargs)
        self.position = position

    def __str__(self) -> str:
        base = super().__str__()
        if isinstance(self.position, tuple):
            return f"line {self.position[0]}, column {self.position[1]}: {base}"
        if self.position:
            return f"at {self.position}: {base}"
        return base


class UnknownGate(GrcError):
    pass


class InvalidMultiplicity(GrcError):
    pass
