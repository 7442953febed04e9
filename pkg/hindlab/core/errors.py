from __future__ import annotations

from typing import Any, Dict, List, Optional


class HindlabError(Exception):
    """Base class for every error raised by the engine."""


class InvalidInputError(HindlabError, ValueError):
    """Malformed or out-of-domain input (CLI exit code 2)."""


class DimensionError(InvalidInputError):
    """Vector length does not match the ground set of a family or point."""


class ParseError(InvalidInputError):
    """A textual or JSON literal could not be decoded."""


class PreconditionError(InvalidInputError):
    """A mathematical hypothesis of an operation was found violated.

    The offending object (usually an NFamily) is kept in ``witness``.
    """

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class NotFoundError(HindlabError):
    """A search ended without a witness (CLI exit code 1).

    ``partial`` carries the best partial result, ``stats`` the search statistics.
    """

    def __init__(self, message: str, partial: Optional[Dict[str, Any]] = None,
                 stats: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.partial = partial or {}
        self.stats = stats or {}


class BudgetExceededError(NotFoundError):
    """A candidate, time or enumeration guard was hit before the search finished."""


class VerificationError(NotFoundError):
    """A candidate was produced but one of its recomputed checks did not hold.

    ``failed`` names the checks; nothing verified is reported in that case.
    """

    def __init__(self, message: str, failed: Optional[List[str]] = None,
                 partial: Optional[Dict[str, Any]] = None, stats: Optional[Dict[str, Any]] = None):
        super().__init__(message, partial, stats)
        self.failed = list(failed or [])
