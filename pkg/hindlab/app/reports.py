import json
import logging
from typing import Any, Dict, NoReturn

from fastapi import HTTPException

from hindlab.core.arithmetic.operations import parse_rational
from hindlab.core.colorings.builtin import coloring_from_spec
from hindlab.core.colorings.schemas import Coloring
from hindlab.core.errors import InvalidInputError, NotFoundError, VerificationError
from hindlab.core.patterns.schemas import SearchBudget
from hindlab.core.reporting.report import emit_report

logger = logging.getLogger(__name__)


def budget_of(request) -> SearchBudget:
    kwargs = {}
    if request.height is not None:
        kwargs["height_bound"] = request.height
    if request.budget_candidates is not None:
        kwargs["max_candidates"] = request.budget_candidates
    if request.budget_seconds is not None:
        kwargs["max_seconds"] = request.budget_seconds
    return SearchBudget(**kwargs)


def coloring_of(request) -> Coloring:
    return coloring_from_spec(request.coloring)


def rationals_of(items):
    return [parse_rational(str(t)) for t in items]


def canonical(payload: Any) -> Dict[str, Any]:
    """The same canonical JSON the CLI prints, as a dict."""
    return json.loads(emit_report(payload))


def raise_http(e: Exception) -> NoReturn:
    if isinstance(e, InvalidInputError):
        raise HTTPException(status_code=400, detail=str(e))
    if isinstance(e, NotFoundError):
        error = {"type": type(e).__name__, "message": str(e)}
        if isinstance(e, VerificationError):
            error["failed"] = e.failed
        detail = canonical({"found": False, "error": error, "partial": e.partial, "stats": e.stats})
        raise HTTPException(status_code=404, detail=detail)
    logger.exception("Unexpected error")
    raise HTTPException(status_code=500, detail=f"Internal error: {str(e)}")
