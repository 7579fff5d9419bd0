"""
Pydantic schema for exported singular Coxeter complexes
"""
from pydantic import BaseModel, Field
from typing import List, Literal

from scox.schemas.systems import SystemRef


class ComplexVertex(BaseModel):
    """One (J,I)-coset"""
    id: str = Field(..., description="Vertex key `I:minword`")
    right: List[str] = Field(..., description="Right subset I")
    min: List[str] = Field(..., description="Minimal element as a word")
    max: List[str] = Field(..., description="Maximal element as a word")
    length: int = Field(..., ge=0, description="Coset length ℓ(p)")


class ComplexEdgeModel(BaseModel):
    """A reduced one-step pair p → q"""
    source: str
    target: str
    step: Literal["+", "-"]
    generator: str


class TwoCellModel(BaseModel):
    """Two parallel edge paths forming the sides of a braid relation"""
    kind: Literal["UpUp", "DownDown", "Switchback"]
    first: List[str] = Field(..., description="Vertex keys along the first side")
    second: List[str] = Field(..., description="Vertex keys along the second side")


class ComplexDocument(BaseModel):
    """Complete 2-skeleton of Cox_J"""
    schema_version: str = Field(default="1.0.0", description="Schema version for evolution")
    system: str = Field(..., description="Canonical system name")
    generators: List[str] = Field(..., description="Generator labels in index order")
    left: List[str] = Field(..., description="Base subset J")
    vertices: List[ComplexVertex]
    edges: List[ComplexEdgeModel]
    two_cells: List[TwoCellModel]


class BuildComplexRequest(BaseModel):
    """Request model for POST /api/complexes/build"""
    system: SystemRef
    left: str = Field("", description="Base subset J")
    format: Literal["json", "dot"] = "json"
