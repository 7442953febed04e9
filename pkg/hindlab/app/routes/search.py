from fastapi import APIRouter

from hindlab.app.reports import budget_of, canonical, coloring_of, raise_http, rationals_of
from hindlab.app.schemas import PatternSearchRequest
from hindlab.core.patterns.commands import run_pattern_search

router = APIRouter(prefix="/search", tags=["Search"])


@router.post("/{pattern}")
def search_endpoint(pattern: str, request: PatternSearchRequest):
    """
    Witness search (or exhaustive threshold) for a classical pattern:
    schur | vdw | folkman | dut | pvdw.

    Returns the canonical report; a search that ends empty-handed inside the
    budget answers with ``found: false``.
    """
    try:
        report = run_pattern_search(
            pattern,
            request.mode,
            C=coloring_of(request) if request.mode == "witness" else None,
            budget=budget_of(request),
            N=request.N,
            k=request.k,
            r=request.r,
            n=request.n,
            v=rationals_of(request.v) if request.v else None,
            distinct=request.distinct,
            polys=request.polys,
            window=request.window,
        )
        return canonical(report)
    except Exception as e:
        raise_http(e)
