"""
System and coset endpoints
"""
from fastapi import APIRouter
import logging

from scox.core.system import classify_components
from scox.schemas.systems import (
    ClassifyResponse,
    ComponentModel,
    CosetModel,
    CosetRequest,
    SystemRef,
)
from scox.services.cosets import coset_of
from scox.utils import notation

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api", tags=["systems"])


@router.post("/systems/classify", response_model=ClassifyResponse)
def classify_system(request: SystemRef):
    """
    Classify a Coxeter system

    Returns the canonical name, the connected components of the diagram with
    their types, and the number of positive roots for finite systems.
    """
    system = request.build()
    components = [
        ComponentModel(generators=[system.label(g) for g in comp], type=name)
        for comp, name in classify_components(system)
    ]
    return ClassifyResponse(
        name=system.name,
        rank=system.rank,
        generators=list(system.labels),
        finite=system.is_finite,
        components=components,
        positive_roots=system.positive_root_count if system.is_finite else None,
    )


@router.post("/cosets/describe", response_model=CosetModel)
def describe_coset(request: CosetRequest):
    """
    Describe the (J,I)-coset containing a word

    Minimum, maximum, redundancies and the lengths ℓ⁺, ℓ⁻.
    """
    system = request.system.build()
    left = notation.parse_subset(system, request.left)
    right = notation.parse_subset(system, request.right)
    w = system.from_word(notation.parse_word(system, request.word))
    p = coset_of(system, left, w, right)
    logger.info(f"🧮 [API] coset {p!r}")
    return CosetModel.from_coset(p)
