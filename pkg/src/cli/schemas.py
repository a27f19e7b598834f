from pydantic import BaseModel, Field
from typing import Any, Dict, List, Optional

from ..localdim.schemas import ReductionInfoOut


class CurveDocument(BaseModel):
    p: int = Field(ge=2)
    n: int = Field(default=1, ge=1)
    modulus: Optional[List[int]] = None
    a: List[str] = Field(min_length=5, max_length=5)


class InvariantsResponse(BaseModel):
    equation: str
    b2: str
    b4: str
    b6: str
    b8: str
    c4: str
    c6: str
    discriminant: str
    j_invariant: str


class PlacesResponse(BaseModel):
    places: List[ReductionInfoOut]


class ErrorResponse(BaseModel):
    error: Dict[str, Any]
