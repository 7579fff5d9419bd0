"""
Request Metrics Middleware

Counts every API response by path and status code.
"""
from fastapi import Request
from starlette.middleware.base import BaseHTTPMiddleware
import logging

from scox.monitoring.metrics import track_api_request

logger = logging.getLogger(__name__)


class RequestMetricsMiddleware(BaseHTTPMiddleware):
    """Feed scox_api_requests_total from each response"""

    def __init__(self, app):
        super().__init__(app)
        logger.info("Request metrics middleware initialized")

    async def dispatch(self, request: Request, call_next):
        response = await call_next(request)
        route = request.scope.get("route")
        endpoint = getattr(route, "path", request.url.path)
        track_api_request(endpoint, response.status_code)
        return response
