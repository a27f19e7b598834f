from pydantic import BaseModel
from typing import List, Optional

from ..ellgroup.models import IsogenyData, Point
from .models import ModLClass, RationalTorsion


class PointOut(BaseModel):
    x: Optional[str] = None
    y: Optional[str] = None

    @classmethod
    def from_point(cls, P: Point) -> "PointOut":
        if P.is_identity:
            return cls()
        return cls(x=str(P.x), y=str(P.y))


class IsogenyOut(BaseModel):
    degree: int
    kernel_poly: str
    codomain: str
    origin: str

    @classmethod
    def from_isogeny(cls, iso: IsogenyData) -> "IsogenyOut":
        return cls(
            degree=iso.degree,
            kernel_poly=str(iso.kernel_poly),
            codomain=str(iso.codomain),
            origin=iso.origin,
        )


class TorsionResponse(BaseModel):
    l: int
    rank: int
    points: List[PointOut] = []

    @classmethod
    def from_torsion(cls, l: int, torsion: RationalTorsion) -> "TorsionResponse":
        return cls(l=l, rank=torsion.rank, points=[PointOut.from_point(P) for P in torsion.points])


class ModLClassOut(BaseModel):
    l: int
    case: str
    torsion_rank: int
    torsion_points: List[PointOut] = []
    rational_isogenies: List[IsogenyOut] = []
    chi_trivial: bool
    coinv_dim: Optional[int] = None
    search_complete: bool = True
    surjective: bool
    reason: str = ""
    notes: List[str] = []

    @classmethod
    def from_class(cls, modl: ModLClass, surjective: bool) -> "ModLClassOut":
        return cls(
            l=modl.l,
            case=modl.case.value,
            torsion_rank=modl.torsion_rank,
            torsion_points=[PointOut.from_point(P) for P in modl.torsion_points],
            rational_isogenies=[IsogenyOut.from_isogeny(iso) for iso in modl.rational_isogenies],
            chi_trivial=modl.chi_trivial,
            coinv_dim=modl.coinv_dim,
            search_complete=modl.search_complete,
            surjective=surjective,
            reason=modl.reason,
            notes=list(modl.notes),
        )
