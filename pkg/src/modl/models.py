from dataclasses import dataclass, field
from enum import Enum
from typing import List, NamedTuple, Optional

from ..curve.models import Curve, Transform
from ..ellgroup.models import IsogenyData, Point


class ModLCase(str, Enum):
    FULL_TORSION = "full_torsion"
    SC = "SC"
    BPRIME = "Bprime"
    B = "B"
    BOREL_OTHER = "borel_other"
    NO_BOREL_FOUND = "no_borel_found"


class RationalTorsion(NamedTuple):
    rank: int
    points: List[Point]


@dataclass(frozen=True)
class WorkingModel:
    """Integral model with a1 = a3 = 0 and the transform reaching it from the input curve."""

    curve: Curve
    transform: Transform


@dataclass
class IsogenySearch:
    isogenies: List[IsogenyData] = field(default_factory=list)
    complete: bool = True
    notes: List[str] = field(default_factory=list)


@dataclass
class ModLClass:
    l: int
    torsion_rank: int
    torsion_points: List[Point]
    rational_isogenies: List[IsogenyData]
    case: ModLCase
    chi_trivial: bool
    coinv_dim: Optional[int]
    search_complete: bool = True
    reason: str = ""
    notes: List[str] = field(default_factory=list)
