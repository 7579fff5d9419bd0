"""
Monitoring and Health Check Endpoints

Provides endpoints for:
- Prometheus metrics
- Health checks
"""
from fastapi import APIRouter
from fastapi.responses import JSONResponse, Response
from prometheus_client import CONTENT_TYPE_LATEST, generate_latest
import logging

from scox import __version__
from scox.config import settings
from scox.core.system import named_system

logger = logging.getLogger(__name__)

router = APIRouter(tags=["monitoring"])


@router.get("/metrics")
async def metrics():
    """
    Prometheus metrics endpoint

    Returns metrics in Prometheus text format.
    """
    if not settings.ENABLE_METRICS:
        return JSONResponse(
            status_code=404,
            content={"error": "Metrics disabled"}
        )

    return Response(
        content=generate_latest(),
        media_type=CONTENT_TYPE_LATEST
    )


@router.get("/health")
def health_check():
    """
    Health check

    Builds A2 and checks |W| = 6 so a broken root engine shows up as unhealthy.
    """
    health_status = {"status": "healthy", "version": __version__, "checks": {}}
    try:
        size = len(named_system("A2").all_elements())
        ok = size == 6
        health_status["checks"]["engine"] = {
            "status": "up" if ok else "down",
            "message": f"A2 has {size} elements",
        }
        if not ok:
            health_status["status"] = "unhealthy"
    except Exception as e:
        logger.error(f"Engine health check failed: {e}")
        health_status["status"] = "unhealthy"
        health_status["checks"]["engine"] = {"status": "down", "message": str(e)}

    status_code = 200 if health_status["status"] == "healthy" else 503
    return JSONResponse(status_code=status_code, content=health_status)
