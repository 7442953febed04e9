from fastapi import APIRouter

from hindlab.app.reports import canonical, raise_http
from hindlab.app.schemas import IdentitiesRequest
from hindlab.core.reporting.identities import verify_identities

router = APIRouter(prefix="/identities", tags=["Identities"])


@router.post("/verify")
def verify_identities_endpoint(request: IdentitiesRequest):
    """Runs the seeded identity suites and returns their pass counts."""
    try:
        return canonical(verify_identities(request.seed, request.cases, request.suites))
    except Exception as e:
        raise_http(e)
