import logging

from fastapi import FastAPI

from hindlab import config
from hindlab.app.routes import identities, pipeline, search

config.configure_logging()
logger = logging.getLogger(__name__)

app = FastAPI(
    title="Hindman Lab API",
    description="Exact search and verification of monochromatic sum/product patterns over the positive rationals",
    version="0.1.0",
)

app.include_router(search.router)
app.include_router(pipeline.router)
app.include_router(identities.router)


@app.api_route("/", methods=["GET", "HEAD"], tags=["Root"])
async def root():
    """Point d'entrée de l'API"""
    return {
        "message": "Hindman Lab API",
        "documentation": "/docs",
        "schema_version": config.SCHEMA_VERSION,
        "endpoints": {
            "search": "/search/{pattern} - POST: schur | vdw | folkman | dut | pvdw",
            "build": "/pipeline/build - POST: consistent vector (lower | full)",
            "hindman": "/pipeline/hindman - POST: monochromatic sum/product witness",
            "identities": "/identities/verify - POST: seeded identity suites",
        },
    }


@app.api_route("/health", methods=["GET", "HEAD"], tags=["Health"], include_in_schema=False)
async def health_check():
    """Vérifie l'état de santé de l'API"""
    return {"status": "healthy"}
