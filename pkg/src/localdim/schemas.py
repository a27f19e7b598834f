from pydantic import BaseModel
from typing import Optional

from ..funcfield.models import Place
from .models import LocalDim, ReductionInfo


class PlaceOut(BaseModel):
    label: str
    kind: str
    degree: int
    residue_order: int

    @classmethod
    def from_place(cls, place: Place) -> "PlaceOut":
        return cls(
            label=place.label,
            kind=place.kind.value,
            degree=place.degree,
            residue_order=place.residue_order,
        )


class ReductionInfoOut(BaseModel):
    place: PlaceOut
    reduction_type: str
    minimal_model: str
    vdisc: int
    vc4: Optional[int] = None
    vj: Optional[int] = None
    gamma_valuation: Optional[int] = None
    gamma_leading: Optional[str] = None
    tate_vq: Optional[int] = None
    tate_leading: Optional[str] = None

    @classmethod
    def from_info(cls, info: ReductionInfo) -> "ReductionInfoOut":
        gamma, tate = info.gamma_data, info.tate
        return cls(
            place=PlaceOut.from_place(info.place),
            reduction_type=info.rtype.value,
            minimal_model=str(info.model.model),
            vdisc=info.model.vdisc,
            vc4=info.model.vc4,
            vj=info.model.vj,
            gamma_valuation=gamma.valuation if gamma else None,
            gamma_leading=str(gamma.leading) if gamma else None,
            tate_vq=tate.vq if tate else None,
            tate_leading=str(tate.q_leading) if tate else None,
        )


class LocalDimOut(BaseModel):
    place: str
    l: int
    status: str
    dim: Optional[int] = None
    reason: str = ""
    advisory: Optional[str] = None

    @classmethod
    def from_local(cls, local: LocalDim) -> "LocalDimOut":
        return cls(
            place=local.place.label,
            l=local.l,
            status=local.status.value,
            dim=local.dim,
            reason=local.reason,
            advisory=local.advisory,
        )


class LocalResponse(BaseModel):
    reduction: ReductionInfoOut
    local: LocalDimOut
