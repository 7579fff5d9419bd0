"""
Singular Coxeter complex endpoints
"""
from fastapi import APIRouter
from fastapi.responses import PlainTextResponse, Response
import logging

from scox.schemas.complexes import BuildComplexRequest
from scox.services.complex_export import export
from scox.services.complexes import build_complex
from scox.utils import notation

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api", tags=["complexes"])


@router.post("/complexes/build")
def build(request: BuildComplexRequest):
    """
    Build the 2-skeleton of Cox_J

    `format=json` returns the complex document; `format=dot` returns
    Graphviz source as plain text.
    """
    system = request.system.build()
    left = notation.parse_subset(system, request.left)
    graph = build_complex(system, left)
    body = export(graph, request.format)
    if request.format == "dot":
        return PlainTextResponse(body)
    return Response(content=body, media_type="application/json")
