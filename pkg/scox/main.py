"""
scox - singular Coxeter monoid toolkit
FastAPI application entry point
"""
from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
import logging

from scox import __version__
from scox.config import settings
from scox.api.routes import complexes, expressions, monitoring, systems, webs
from scox.exceptions import InvariantViolation, ResourceBoundError, ScoxException
from scox.logging_config import setup_logging
from scox.middleware.request_metrics import RequestMetricsMiddleware

# Initialize logging
setup_logging(
    log_level=settings.LOG_LEVEL,
    environment=settings.ENVIRONMENT,
    log_file=settings.LOG_FILE
)

logger = logging.getLogger(__name__)

# API metadata
API_DESCRIPTION = """
# scox API

Double cosets of finite Coxeter groups, singular expressions and their
rewriting, singular Coxeter complexes and type A webs.

## Features

🧩 **Systems and cosets**
- Classification of Coxeter matrices
- (J,I)-cosets: minimum, maximum, redundancies, lengths

🔁 **Expressions**
- Evaluation and reducedness
- Rewriting to a reduced expression with a replayable trace
- Reduced expression sets, high and low roads

📋 **Relations**
- Switchback relations and regenerated tables for finite types

🕸️ **Complexes and webs**
- 2-skeleton of Cox_J as JSON or DOT
- Type A web evaluation and Hom counts

## Support

- 📖 API Documentation: [/docs](/docs)
- 💚 Health Check: [/health](/health)
- 📊 Metrics (Prometheus): [/metrics](/metrics)
"""

# API tags metadata
tags_metadata = [
    {"name": "monitoring", "description": "Health checks and metrics"},
    {"name": "systems", "description": "Classification and coset queries"},
    {"name": "expressions", "description": "Evaluation, rewriting, reduced expressions and switchbacks"},
    {"name": "complexes", "description": "Singular Coxeter complexes"},
    {"name": "webs", "description": "Type A webs"},
]

app = FastAPI(
    title="scox API",
    description=API_DESCRIPTION,
    version=__version__,
    debug=settings.DEBUG and not settings.is_production,
    docs_url="/docs",
    redoc_url="/redoc",
    openapi_tags=tags_metadata,
    license_info={
        "name": "MIT License",
        "url": "https://opensource.org/licenses/MIT",
    },
)


# ============================================================================
# GLOBAL EXCEPTION HANDLERS
# ============================================================================

@app.exception_handler(ScoxException)
async def scox_exception_handler(request: Request, exc: ScoxException):
    """
    Render any scox error as its `to_dict()` payload

    Bad input is logged at WARNING; a failed internal cross-check is a bug
    and is logged at ERROR. An exceeded search bound is named in X-Scox-Bound.
    """
    level = logging.ERROR if isinstance(exc, InvariantViolation) else logging.WARNING
    logger.log(
        level,
        f"⚠️ [API] {request.method} {request.url.path} -> {exc.error_code}: {exc.message}",
        extra={"error_code": exc.error_code, "details": exc.details},
    )

    headers = {}
    if isinstance(exc, ResourceBoundError) and exc.details.get("bound"):
        headers["X-Scox-Bound"] = str(exc.details["bound"])

    return JSONResponse(status_code=exc.status_code, content=exc.to_dict(), headers=headers)


@app.exception_handler(Exception)
async def generic_exception_handler(request: Request, exc: Exception):
    """Catch-all handler for unhandled exceptions"""
    logger.error(
        f"❌ [API] unhandled {type(exc).__name__} on {request.method} {request.url.path}: {exc}",
        exc_info=True
    )
    return JSONResponse(
        status_code=500,
        content={
            "error": "INTERNAL_SERVER_ERROR",
            "message": "An unexpected error occurred.",
            "details": {},
            "status_code": 500
        }
    )


# ============================================================================
# MIDDLEWARE
# ============================================================================

if settings.ENABLE_METRICS:
    app.add_middleware(RequestMetricsMiddleware)

app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.CORS_ORIGINS,
    allow_credentials=settings.CORS_ALLOW_CREDENTIALS,
    allow_methods=settings.CORS_ALLOW_METHODS,
    allow_headers=settings.CORS_ALLOW_HEADERS,
)

# Include routers
app.include_router(monitoring.router)   # Monitoring and health checks
app.include_router(systems.router)      # Classification and cosets
app.include_router(expressions.router)  # Expressions, rex, relations
app.include_router(complexes.router)    # Cox_J
app.include_router(webs.router)         # Type A webs


@app.on_event("startup")
async def startup_event():
    """Initialize on startup"""
    if settings.ENABLE_METRICS:
        from scox.monitoring.metrics import init_metrics
        init_metrics(
            version=__version__,
            environment=settings.ENVIRONMENT
        )
    logger.info(f"🚀 Starting scox API {__version__} ({settings.ENVIRONMENT})")
    if settings.is_development:
        logger.info(f"📖 Docs at http://localhost:{settings.API_PORT}/docs")


@app.get("/")
async def root():
    """Welcome endpoint"""
    return {
        "message": "Welcome to the scox API",
        "status": "operational",
        "version": __version__,
        "environment": settings.ENVIRONMENT,
        "documentation": "/docs",
        "endpoints": {
            "health": "GET /health",
            "metrics": "GET /metrics" if settings.ENABLE_METRICS else None,
            "classify": "POST /api/systems/classify",
            "describe_coset": "POST /api/cosets/describe",
            "evaluate": "POST /api/expressions/evaluate",
            "reduce": "POST /api/expressions/reduce",
            "rex": "POST /api/rex",
            "switchback": "POST /api/relations/switchback",
            "table": "GET /api/relations/tables/{type_name}",
            "complex": "POST /api/complexes/build",
            "web_evaluate": "POST /api/webs/evaluate",
            "hom_count": "POST /api/webs/hom-count"
        }
    }


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host=settings.API_HOST, port=settings.API_PORT)
