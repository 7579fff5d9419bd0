"""
Pydantic schemas for systems and cosets
"""
from pydantic import BaseModel, Field, model_validator
from typing import List, Optional, Union

from scox.core.system import CoxeterSystem, new_system
from scox.services.cosets import DoubleCoset
from scox.utils import notation


class SystemRef(BaseModel):
    """A named type or an explicit Coxeter matrix"""
    type: Optional[str] = Field(None, description="Type name such as A3, E8, I2(5) or A2×A1")
    matrix: Optional[List[List[Union[int, float, str]]]] = Field(
        None, description="Symmetric Coxeter matrix; use \"inf\" or \"∞\" for m = ∞"
    )
    labels: Optional[List[str]] = Field(None, description="Generator labels for a matrix")

    @model_validator(mode="after")
    def exactly_one_source(self):
        if (self.type is None) == (self.matrix is None):
            raise ValueError("give exactly one of `type` or `matrix`")
        return self

    def build(self) -> CoxeterSystem:
        return new_system(self.model_dump(exclude_none=True))

    class Config:
        json_schema_extra = {"example": {"type": "A3"}}


class ComponentModel(BaseModel):
    generators: List[str]
    type: str


class ClassifyResponse(BaseModel):
    """Response model for POST /api/systems/classify"""
    name: str
    rank: int
    generators: List[str]
    finite: bool
    components: List[ComponentModel]
    positive_roots: Optional[int] = Field(None, description="|Φ⁺| when finite")


class CosetRequest(BaseModel):
    """Request model for POST /api/cosets/describe"""
    system: SystemRef
    left: str = Field("", description="Left subset J, e.g. \"st\" or \"s1,s3\"")
    right: str = Field("", description="Right subset I")
    word: str = Field("", description="Any element of the coset as a word")

    class Config:
        json_schema_extra = {
            "example": {"system": {"type": "A3"}, "left": "st", "right": "st", "word": "stsuts"}
        }


class CosetModel(BaseModel):
    """One (J,I)-coset described by its extremal elements and redundancies"""
    left: List[str]
    right: List[str]
    min: List[str]
    max: List[str]
    left_redundancy: List[str]
    right_redundancy: List[str]
    length: int
    length_plus: int
    length_minus: int
    is_identity: bool

    @classmethod
    def from_coset(cls, p: DoubleCoset) -> "CosetModel":
        system = p.system
        return cls(
            left=notation.subset_labels(system, p.left),
            right=notation.subset_labels(system, p.right),
            min=p.min.labels(),
            max=p.max.labels(),
            left_redundancy=notation.subset_labels(system, p.left_redundancy),
            right_redundancy=notation.subset_labels(system, p.right_redundancy),
            length=p.length,
            length_plus=p.lengths.plus,
            length_minus=p.lengths.minus,
            is_identity=p.is_identity(),
        )
