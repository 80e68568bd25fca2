"""Exception types shared across the package."""

from __future__ import annotations


class HelistabError(Exception):
    """Base class for all errors raised by this package."""


class ParameterRangeError(HelistabError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class DegenerateInputError(HelistabError, ValueError):
    """An input is structurally valid but makes the requested quantity undefined."""


class NumericalFailureError(HelistabError, RuntimeError):
    """An iterative numerical procedure failed to converge; message carries diagnostics."""


class InternalConsistencyError(HelistabError, RuntimeError):
    """A cross-check that should hold by construction failed, signalling a bug."""


class IngestionError(HelistabError, ValueError):
    """An external dataset could not be parsed.

    ``lines`` lists the 1-based line numbers of the offending rows, when known.
    """

    def __init__(self, message: str, lines: list[int] | None = None):
        super().__init__(message)
        self.lines = list(lines) if lines else []
