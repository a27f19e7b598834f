from pydantic import BaseModel
from typing import List, Optional

from ..funcfield.service import FunctionFieldService
from ..localdim.schemas import LocalDimOut, ReductionInfoOut
from ..modl.schemas import ModLClassOut
from .models import DimRange, GlobalReport
from .service import ReportService


class DimRangeOut(BaseModel):
    lo: int
    hi: int
    known: bool

    @classmethod
    def from_range(cls, r: Optional[DimRange]) -> Optional["DimRangeOut"]:
        if r is None:
            return None
        return cls(lo=r.lo, hi=r.hi, known=r.is_point)


class CurveOut(BaseModel):
    p: int
    q: int
    equation: str
    a: List[str]
    discriminant: str
    j_invariant: str


class PlaceReportOut(BaseModel):
    reduction: ReductionInfoOut
    local: LocalDimOut


class GlobalReportOut(BaseModel):
    curve: CurveOut
    l: int
    places: List[PlaceReportOut]
    modl: ModLClassOut
    sum_bad_inf: DimRangeOut
    coinv: Optional[int] = None
    applicable: Optional[bool] = None
    surjective: bool
    ker_dim: Optional[DimRangeOut] = None
    coker_dim: Optional[DimRangeOut] = None
    sequence: str
    warnings: List[str] = []

    @classmethod
    def from_report(cls, report: GlobalReport) -> "GlobalReportOut":
        c = report.curve
        inv = c.invariants
        return cls(
            curve=CurveOut(
                p=c.field.characteristic,
                q=c.field.base.order,
                equation=str(c),
                a=[str(a) for a in c.a],
                discriminant=FunctionFieldService.format_factored(inv.disc),
                j_invariant=str(inv.j),
            ),
            l=report.l,
            places=[
                PlaceReportOut(
                    reduction=ReductionInfoOut.from_info(pr.info),
                    local=LocalDimOut.from_local(pr.local),
                )
                for pr in report.places
            ],
            modl=ModLClassOut.from_class(report.modl, report.surjective),
            sum_bad_inf=DimRangeOut.from_range(report.sum_bad_inf),
            coinv=report.coinv,
            applicable=report.applicable,
            surjective=report.surjective,
            ker_dim=DimRangeOut.from_range(report.ker_dim),
            coker_dim=DimRangeOut.from_range(report.coker_dim),
            sequence=ReportService.render_sequence(report),
            warnings=list(report.warnings),
        )
