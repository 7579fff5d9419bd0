"""
Pydantic schemas for type A webs

The JSON layered form keeps the 1-based positions of the text notation.
"""
from pydantic import BaseModel, Field
from typing import List, Literal, Optional

from scox.schemas.systems import CosetModel
from scox.services.webs import Web, WebVertex


class WebLayerModel(BaseModel):
    kind: Literal["merge", "split"]
    at: int = Field(..., ge=1, description="1-based block position")
    a: int = Field(..., ge=1)
    b: int = Field(..., ge=1)


class WebDocument(BaseModel):
    """A web as a bottom object and a list of layers"""
    schema_version: str = Field(default="1.0.0", description="Schema version for evolution")
    bottom: List[int]
    layers: List[WebLayerModel] = Field(default_factory=list)

    def to_web(self) -> Web:
        return Web(tuple(self.bottom), tuple(WebVertex(l.kind, l.at - 1, l.a, l.b) for l in self.layers))


class WebRequest(BaseModel):
    """Request model for POST /api/webs/evaluate: text notation or the layered document"""
    text: Optional[str] = Field(None, examples=["(1,2,1) ; merge@1(1,2) ; split@1(2,1)"])
    web: Optional[WebDocument] = None


class WebEvaluateResponse(BaseModel):
    web: str
    top: List[int]
    degree: int
    expression: str
    coset: CosetModel


class HomCountRequest(BaseModel):
    """Request model for POST /api/webs/hom-count"""
    bottom: List[int]
    top: List[int]

    class Config:
        json_schema_extra = {"example": {"bottom": [1, 1], "top": [2]}}


class HomCountResponse(BaseModel):
    bottom: List[int]
    top: List[int]
    count: int
