from fastapi import APIRouter

from hindlab.app.reports import budget_of, canonical, coloring_of, raise_http, rationals_of
from hindlab.app.schemas import BuildRequest, HindmanRequest
from hindlab.core.pipeline.schemas import PipelineConfig
from hindlab.core.pipeline.search import run_pipeline

router = APIRouter(prefix="/pipeline", tags=["Pipeline"])


@router.post("/build")
def build_endpoint(request: BuildRequest):
    """Builds v with q·v consistent for every q in Q (lower or full mode)."""
    try:
        cfg = PipelineConfig(mode=request.mode, n=request.n, Q=tuple(rationals_of(request.Q)),
                             coloring=coloring_of(request), budget=budget_of(request))
        return canonical(run_pipeline(cfg))
    except Exception as e:
        raise_http(e)


@router.post("/hindman")
def hindman_endpoint(request: HindmanRequest):
    """Monochromatic sum/product witness (or sums of disjoint products with ``generalized``)."""
    try:
        cfg = PipelineConfig(
            mode="theorem2" if request.generalized else "theorem1",
            k=request.k,
            coloring=coloring_of(request),
            budget=budget_of(request),
            route=request.route,
            require_distinct=request.require_distinct,
        )
        return canonical(run_pipeline(cfg))
    except Exception as e:
        raise_http(e)
