"""
Expression, reduced expression and relation endpoints
"""
from fastapi import APIRouter
import logging

from scox.exceptions import ValidationError
from scox.schemas.expressions import (
    EvaluateResponse,
    ExpressionRequest,
    ReduceResponse,
    RexRequest,
    RexResponse,
    SwitchbackRequest,
    SwitchbackResponse,
    TableResponse,
    TableRowModel,
    TraceStepModel,
)
from scox.schemas.systems import CosetModel
from scox.services.constructions import high_road, low_road, some_rex
from scox.services.cosets import coset_of
from scox.services.expressions import Expression
from scox.services.relations import relation_calculus
from scox.services.rewrite import normalize, rex_set
from scox.services.switchback_tables import regenerate_table
from scox.utils import notation

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api", tags=["expressions"])


@router.post("/expressions/evaluate", response_model=EvaluateResponse)
def evaluate_expression(request: ExpressionRequest):
    """Evaluate an expression to its double coset and report reducedness"""
    system = request.system.build()
    e = Expression.parse(system, request.expression)
    return EvaluateResponse(
        expression=str(e),
        width=e.width,
        length=e.length,
        reduced=e.is_reduced,
        coset=CosetModel.from_coset(e.coset),
    )


@router.post("/expressions/reduce", response_model=ReduceResponse)
def reduce_expression(request: ExpressionRequest):
    """
    Rewrite an expression to a reduced one

    Returns the full trace: each step names the relation, its position and
    direction, and the expression after it.
    """
    system = request.system.build()
    e = Expression.parse(system, request.expression)
    trace = normalize(e)
    payload = trace.to_dict()
    return ReduceResponse(
        start=payload["start"],
        final=payload["final"],
        steps=[TraceStepModel(**step) for step in payload["steps"]],
        coset=CosetModel.from_coset(e.coset),
    )


@router.post("/rex", response_model=RexResponse)
def reduced_expressions(request: RexRequest):
    """
    Reduced expressions of a coset

    `some`, `high` and `low` return one expression; `enumerate` returns all
    of them in canonical order.
    """
    system = request.system.build()
    left = notation.parse_subset(system, request.left)
    right = notation.parse_subset(system, request.right)
    w = system.from_word(notation.parse_word(system, request.word))
    p = coset_of(system, left, w, right)
    if request.mode == "enumerate":
        found = list(rex_set(p, max_width=request.max_width))
    else:
        found = [{"some": some_rex, "high": high_road, "low": low_road}[request.mode](p)]
    return RexResponse(
        coset=CosetModel.from_coset(p),
        mode=request.mode,
        expressions=[str(e) for e in found],
        count=len(found),
    )


@router.post("/relations/switchback", response_model=SwitchbackResponse)
def switchback_relation(request: SwitchbackRequest):
    """
    The switchback relation for J = S∖s_a, s = s_a, t = s_b

    Answers 422 NO_ROTATION when s_a = w₀ s_b w₀.
    """
    system = request.system.build()
    for value in (request.a, request.b):
        if value > system.rank:
            raise ValidationError(f"generator {value} outside 1..{system.rank}", field="b" if value == request.b else "a")
    s, t = request.a - 1, request.b - 1
    relation = relation_calculus.switchback(system, system.all_generators - {s}, s, t)
    return SwitchbackResponse(
        a=request.a,
        b=request.b,
        c=[g + 1 for g in relation.rotation.c],
        delta=relation.rotation.delta,
        lhs=str(relation.lhs),
        rhs=str(relation.rhs),
    )


@router.get("/relations/tables/{type_name}", response_model=TableResponse)
def switchback_table(type_name: str, flips: bool = False):
    """Regenerate the switchback table of a finite irreducible type"""
    table = regenerate_table(type_name, include_flips=flips)
    return TableResponse(
        type=table.type_name,
        rank=table.rank,
        rows=[TableRowModel(a=r.a, b=r.b, c=list(r.c)) for r in table.rows],
    )
