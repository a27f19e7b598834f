from typing import Optional
import logging

from ..curve.models import Curve
from ..curve.service import CurveService, require_large_characteristic
from ..ellgroup.service import EllipticGroupService, check_prime_l
from ..exceptions import ArithmeticDomainError
from ..funcfield.models import Place
from ..funcfield.service import FunctionFieldService
from ..gf.service import FiniteFieldService
from .models import LocalDim, LocalDimStatus, ReductionInfo, ReductionType, TatePeriodInfo

logger = logging.getLogger(__name__)


class LocalDimensionService:

    @staticmethod
    def classify_reduction(c: Curve, place: Place) -> ReductionInfo:
        require_large_characteristic(c.field)
        local = CurveService.minimal_model_at(c, place)
        order = place.residue_order
        if local.vdisc == 0:
            return ReductionInfo(place, local, ReductionType.GOOD, order)
        if local.vc4 != 0:
            return ReductionInfo(place, local, ReductionType.ADDITIVE, order)

        inv = local.model.invariants
        gamma = -inv.c4 / inv.c6
        gamma_data = FunctionFieldService.leading_at(gamma, place)
        split = gamma_data.valuation % 2 == 0 and FiniteFieldService.is_square(gamma_data.leading)
        j_data = FunctionFieldService.leading_at(c.invariants.j, place)
        tate = TatePeriodInfo(vq=-j_data.valuation, q_leading=j_data.leading.inverse())
        rtype = ReductionType.SPLIT_MULTIPLICATIVE if split else ReductionType.NONSPLIT_MULTIPLICATIVE
        logger.debug(f"{place}: {rtype.value}, gamma leading {gamma_data.leading}, v(q) = {tate.vq}")
        return ReductionInfo(place, local, rtype, order, gamma_data, tate)

    @staticmethod
    def tate_is_lth_power(info: ReductionInfo, l: int) -> bool:
        """q is an l-th power iff l | v(q) and its leading coefficient is an l-th power."""
        if not info.rtype.is_multiplicative or info.tate is None:
            raise ArithmeticDomainError(
                f"Tate parameter requested at {info.place} with {info.rtype.value} reduction"
            )
        if info.tate.vq % l:
            return False
        return FiniteFieldService.is_lth_power(info.tate.q_leading, l)

    @staticmethod
    def local_dim(c: Curve, place: Place, l: int, info: Optional[ReductionInfo] = None) -> LocalDim:
        require_large_characteristic(c.field)
        check_prime_l(c.field, l)
        if info is None:
            info = LocalDimensionService.classify_reduction(c, place)
        order = info.residue_order

        if info.rtype == ReductionType.GOOD:
            reduced = CurveService.reduce_curve(info.model)
            dim = EllipticGroupService.l_torsion_rank(reduced, l)
            return LocalDim(place, l, LocalDimStatus.KNOWN, dim, "good reduction: rank of the reduced l-torsion")

        if info.rtype == ReductionType.SPLIT_MULTIPLICATIVE:
            if (order - 1) % l:
                return LocalDim(place, l, LocalDimStatus.KNOWN, 0, f"split multiplicative, {l} does not divide {order - 1}")
            if LocalDimensionService.tate_is_lth_power(info, l):
                return LocalDim(place, l, LocalDimStatus.KNOWN, 1, "split multiplicative, Tate parameter is an l-th power")
            return LocalDim(place, l, LocalDimStatus.KNOWN, 0, "split multiplicative, Tate parameter is not an l-th power")

        if info.rtype == ReductionType.NONSPLIT_MULTIPLICATIVE:
            if l > 3:
                return LocalDim(place, l, LocalDimStatus.KNOWN, 0, "non-split multiplicative, l > 3")
            if l == 3 and (order - 1) % 3 == 0:
                return LocalDim(place, l, LocalDimStatus.KNOWN, 0, "non-split multiplicative, 3 divides the residue order minus 1")
            if l == 3 and info.tate.vq % 3:
                return LocalDim(place, l, LocalDimStatus.KNOWN, 0, "non-split multiplicative, 3 does not divide v(j)")
            return LocalDim(
                place,
                l,
                LocalDimStatus.NOT_DETERMINED,
                reason=f"non-split multiplicative with l = {l} is not decided by the local criteria",
            )

        vj = info.model.vj
        potentially_good = vj is None or vj >= 0
        if potentially_good:
            advisory = "potentially good reduction (v(j) >= 0)"
            if l > 3:
                advisory += "; injects into the group of a good-reduction model over a finite extension, so dim <= 2"
        else:
            advisory = "potentially multiplicative reduction (v(j) < 0)"
        return LocalDim(
            place,
            l,
            LocalDimStatus.ADDITIVE_UNDETERMINED,
            reason="additive reduction",
            advisory=advisory,
        )
