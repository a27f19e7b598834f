from dataclasses import dataclass, field
from typing import List, Optional

from ..curve.models import Curve
from ..localdim.models import LocalDim, ReductionInfo
from ..modl.models import ModLClass


@dataclass(frozen=True)
class DimRange:
    """Closed integer interval [lo, hi]; a point value when lo == hi."""

    lo: int
    hi: int

    @classmethod
    def point(cls, value: int) -> "DimRange":
        return cls(value, value)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> Optional[int]:
        return self.lo if self.is_point else None

    def __contains__(self, n: int) -> bool:
        return self.lo <= n <= self.hi

    def __add__(self, other: "DimRange") -> "DimRange":
        return DimRange(self.lo + other.lo, self.hi + other.hi)

    def __str__(self) -> str:
        return str(self.lo) if self.is_point else f"[{self.lo}, {self.hi}]"


@dataclass(frozen=True)
class PlaceReport:
    info: ReductionInfo
    local: LocalDim

    @property
    def contribution(self) -> DimRange:
        # undetermined local groups are bounded by dim E[l] = 2
        if self.local.is_known:
            return DimRange.point(self.local.dim)
        return DimRange(0, 2)


@dataclass
class GlobalReport:
    curve: Curve
    l: int
    places: List[PlaceReport]
    modl: ModLClass
    surjective: bool
    sum_bad_inf: DimRange
    coinv: Optional[int]
    applicable: Optional[bool]
    ker_dim: Optional[DimRange] = None
    coker_dim: Optional[DimRange] = None
    warnings: List[str] = field(default_factory=list)

    @property
    def infinity(self) -> PlaceReport:
        return next(pr for pr in self.places if pr.info.place.is_infinite)

    @property
    def bad_finite(self) -> List[PlaceReport]:
        return [pr for pr in self.places if not pr.info.place.is_infinite]

    @property
    def is_fully_known(self) -> bool:
        return (
            bool(self.applicable)
            and self.sum_bad_inf.is_point
            and self.ker_dim is not None
            and self.ker_dim.is_point
            and self.coker_dim is not None
            and self.coker_dim.is_point
        )
