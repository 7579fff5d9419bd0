"""
Pydantic schemas for expressions, reduced expressions and relations
"""
from pydantic import BaseModel, Field
from typing import List, Literal, Optional

from scox.schemas.systems import CosetModel, SystemRef


class ExpressionRequest(BaseModel):
    """Request model for POST /api/expressions/evaluate and /reduce"""
    system: SystemRef
    expression: str = Field(..., description="Bracket form \"[∅,s,st]\" or step form \"[st] -s +u\"")

    class Config:
        json_schema_extra = {"example": {"system": {"type": "A2"}, "expression": "[∅,s,∅,s,∅]"}}


class EvaluateResponse(BaseModel):
    expression: str
    width: int
    length: int
    reduced: bool
    coset: CosetModel


class TraceStepModel(BaseModel):
    kind: str
    position: int
    direction: str
    expression: str


class ReduceResponse(BaseModel):
    """Response model for POST /api/expressions/reduce"""
    start: str
    final: str
    steps: List[TraceStepModel]
    coset: CosetModel


class RexRequest(BaseModel):
    """Request model for POST /api/rex"""
    system: SystemRef
    left: str = ""
    right: str = ""
    word: str = ""
    mode: Literal["some", "high", "low", "enumerate"] = "enumerate"
    max_width: Optional[int] = Field(None, ge=0, description="Width cap for enumeration")


class RexResponse(BaseModel):
    coset: CosetModel
    mode: str
    expressions: List[str]
    count: int


class SwitchbackRequest(BaseModel):
    """Request model for POST /api/relations/switchback"""
    system: SystemRef
    a: int = Field(..., ge=1, description="s = s_a, J = S∖s_a")
    b: int = Field(..., ge=1, description="t = s_b")

    class Config:
        json_schema_extra = {"example": {"system": {"type": "E8"}, "a": 3, "b": 8}}


class SwitchbackResponse(BaseModel):
    a: int
    b: int
    c: List[int] = Field(..., description="Right-hand side letters, 1-based")
    delta: int
    lhs: str
    rhs: str


class TableRowModel(BaseModel):
    a: int
    b: int
    c: List[int]


class TableResponse(BaseModel):
    """Response model for GET /api/relations/tables/{type_name}"""
    type: str
    rank: int
    rows: List[TableRowModel]
