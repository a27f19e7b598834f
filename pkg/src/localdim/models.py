from dataclasses import dataclass
from enum import Enum
from typing import Optional

from ..curve.models import LocalModel
from ..funcfield.models import LocalLeading, Place
from ..gf.models import FieldElem


class ReductionType(str, Enum):
    GOOD = "good"
    SPLIT_MULTIPLICATIVE = "split_multiplicative"
    NONSPLIT_MULTIPLICATIVE = "nonsplit_multiplicative"
    ADDITIVE = "additive"

    @property
    def is_multiplicative(self) -> bool:
        return self in (ReductionType.SPLIT_MULTIPLICATIVE, ReductionType.NONSPLIT_MULTIPLICATIVE)


class LocalDimStatus(str, Enum):
    KNOWN = "known"
    ADDITIVE_UNDETERMINED = "additive_undetermined"
    NOT_DETERMINED = "not_determined"


@dataclass(frozen=True)
class TatePeriodInfo:
    # v(q) = -v(j) and q_leading = 1 / leading(j)
    vq: int
    q_leading: FieldElem


@dataclass(frozen=True)
class ReductionInfo:
    place: Place
    model: LocalModel
    rtype: ReductionType
    residue_order: int
    gamma_data: Optional[LocalLeading] = None
    tate: Optional[TatePeriodInfo] = None


@dataclass(frozen=True)
class LocalDim:
    place: Place
    l: int
    status: LocalDimStatus
    dim: Optional[int] = None
    reason: str = ""
    advisory: Optional[str] = None

    @property
    def is_known(self) -> bool:
        return self.status == LocalDimStatus.KNOWN
