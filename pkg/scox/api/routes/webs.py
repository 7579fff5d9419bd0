"""
Type A web endpoints
"""
from fastapi import APIRouter
import logging

from scox.exceptions import ValidationError
from scox.schemas.systems import CosetModel
from scox.schemas.webs import HomCountRequest, HomCountResponse, WebEvaluateResponse, WebRequest
from scox.services.webs import evaluate_web, expression_from_web, format_web, hom_count, parse_web

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api", tags=["webs"])


@router.post("/webs/evaluate", response_model=WebEvaluateResponse)
def evaluate(request: WebRequest):
    """Evaluate a web (text notation or layered JSON) to its double coset in S_N"""
    if (request.text is None) == (request.web is None):
        raise ValidationError("give exactly one of `text` or `web`", field="web")
    web = parse_web(request.text) if request.text is not None else request.web.to_web()
    return WebEvaluateResponse(
        web=format_web(web),
        top=list(web.top),
        degree=web.degree,
        expression=str(expression_from_web(web)),
        coset=CosetModel.from_coset(evaluate_web(web)),
    )


@router.post("/webs/hom-count", response_model=HomCountResponse)
def count_homs(request: HomCountRequest):
    """Number of double cosets S_top \\ S_N / S_bottom"""
    return HomCountResponse(
        bottom=request.bottom,
        top=request.top,
        count=hom_count(request.bottom, request.top),
    )
