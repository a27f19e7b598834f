from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterable, List, Optional, Sequence, Tuple
import logging

from ..config import settings
from ..curve.models import Curve
from ..curve.service import CurveService, require_large_characteristic
from ..ellgroup.service import check_prime_l
from ..exceptions import ConsistencyError, UndeterminedResultError
from ..funcfield.models import Place, Poly
from ..funcfield.service import FunctionFieldService
from ..gf.service import is_prime
from ..localdim.service import LocalDimensionService
from ..modl.service import ModLService
from .models import DimRange, GlobalReport, PlaceReport

logger = logging.getLogger(__name__)

# largest rank of E(F)[l] on a non-isotrivial curve over F_q(t); 0 beyond
MAX_TORSION_RANK: Dict[int, int] = {2: 2, 3: 2, 5: 2, 7: 1}


def sequence_bounds(total: DimRange, coinv: int, surjective: bool) -> Tuple[DimRange, DimRange]:
    """
    Bounds on (dim Ker, dim Coker) from 0 -> Ker -> F_l^a -> F_l^c -> Coker -> 0
    with a in `total` and c = coinv.
    """
    if surjective:
        if total.hi < coinv:
            raise ConsistencyError(
                f"boundary map is surjective but the middle term has dimension at most {total.hi} < {coinv}"
            )
        return DimRange(max(0, total.lo - coinv), total.hi - coinv), DimRange.point(0)
    ker = DimRange(max(0, total.lo - coinv), total.hi)
    coker = DimRange(max(0, coinv - total.hi), coinv)
    return ker, coker


def is_consistent(total: DimRange, coinv: int, ker: DimRange, coker: DimRange) -> bool:
    """Some integer choice satisfies a - c = k - k' inside the stated ranges."""
    for a in range(total.lo, total.hi + 1):
        for k in range(ker.lo, ker.hi + 1):
            if (k - a + coinv) in coker:
                return True
    return False


class ReportService:

    @staticmethod
    def _place_report(c: Curve, place: Place, l: int) -> PlaceReport:
        info = LocalDimensionService.classify_reduction(c, place)
        local = LocalDimensionService.local_dim(c, place, l, info)
        logger.debug(f"{place}: {info.rtype.value}, {local.status.value}, dim {local.dim}")
        return PlaceReport(info, local)

    @staticmethod
    def place_reports(c: Curve, l: int) -> List[PlaceReport]:
        """Bad finite places in order, then infinity (always present)."""
        places = [v for v in CurveService.bad_places(c) if not v.is_infinite]
        places.append(FunctionFieldService.infinite_place(c.field))
        if settings.max_workers > 1 and len(places) > 1:
            with ThreadPoolExecutor(max_workers=settings.max_workers) as pool:
                return list(pool.map(lambda v: ReportService._place_report(c, v, l), places))
        return [ReportService._place_report(c, v, l) for v in places]

    @staticmethod
    def build_report(c: Curve, l: int, candidates: Sequence[Poly] = ()) -> GlobalReport:
        require_large_characteristic(c.field)
        check_prime_l(c.field, l)
        places = ReportService.place_reports(c, l)
        modl = ModLService.classify(c, l, candidates)
        surjective = ModLService.surjectivity_flag(modl)

        total = DimRange.point(0)
        for pr in places:
            total = total + pr.contribution
        coinv = modl.coinv_dim

        report = GlobalReport(
            curve=c,
            l=l,
            places=places,
            modl=modl,
            surjective=surjective,
            sum_bad_inf=total,
            coinv=coinv,
            applicable=None if coinv is None else coinv > 0,
        )
        if coinv is None:
            report.warnings.append("coinvariant dimension undetermined; the exact sequence is not evaluated")
        elif coinv == 0:
            report.warnings.append("coinvariants vanish; no kernel claim is made")
        else:
            report.ker_dim, report.coker_dim = sequence_bounds(total, coinv, surjective)
            ReportService.check_exactness(report)

        for pr in places:
            if pr.local.advisory:
                report.warnings.append(f"{pr.info.place}: {pr.local.advisory}")
        report.warnings.extend(ReportService.torsion_sanity(c, {l: modl.torsion_rank}))
        logger.info(
            f"Report l = {l}: sum {total}, coinv {coinv}, ker {report.ker_dim}, coker {report.coker_dim}"
        )
        return report

    @staticmethod
    def check_exactness(report: GlobalReport) -> None:
        if not report.applicable:
            return
        total, coinv = report.sum_bad_inf, report.coinv
        ker, coker = report.ker_dim, report.coker_dim
        if report.is_fully_known and total.value - coinv - ker.value + coker.value != 0:
            raise ConsistencyError(
                f"exactness fails: {total.value} - {coinv} != {ker.value} - {coker.value}"
            )
        if ker.lo < max(0, total.lo - coinv) or coker.hi > coinv:
            raise ConsistencyError(f"kernel {ker} or cokernel {coker} outside the exact sequence bounds")
        if not is_consistent(total, coinv, ker, coker):
            raise ConsistencyError(f"no integer solution for ker {ker}, coker {coker}")

    @staticmethod
    def require_point_values(report: GlobalReport) -> None:
        if report.ker_dim is None or report.coker_dim is None:
            raise UndeterminedResultError("the exact sequence was not evaluated", applicable=report.applicable)
        if not (report.ker_dim.is_point and report.coker_dim.is_point):
            raise UndeterminedResultError(
                f"ker_dim {report.ker_dim} and coker_dim {report.coker_dim} are not point values"
            )

    @staticmethod
    def torsion_sanity(c: Curve, ranks: Optional[Dict[int, int]] = None, ls: Optional[Iterable[int]] = None) -> List[str]:
        """
        Compare l-torsion ranks with the torsion groups possible on a
        non-isotrivial curve over F_q(t). Ranks not supplied are computed.
        """
        j = c.invariants.j
        if j.is_constant():
            return ["isotrivial curve (j is constant): torsion list not applicable"]
        p = c.field.characteristic
        ranks = dict(ranks or {})
        if ls is not None:
            for l in ls:
                if l not in ranks and is_prime(l) and l != p:
                    ranks[l] = ModLService.rational_l_torsion(c, l).rank
        warnings = []
        for l, rank in sorted(ranks.items()):
            allowed = MAX_TORSION_RANK.get(l, 0)
            if rank > allowed:
                message = f"rank {rank} of E(F)[{l}] exceeds {allowed}, the largest possible on a non-isotrivial curve"
                logger.warning(message)
                warnings.append(message)
        return warnings

    @staticmethod
    def default_sanity_primes(c: Curve) -> List[int]:
        p = c.field.characteristic
        return [l for l in range(2, settings.max_division_l + 1) if is_prime(l) and l != p]

    @staticmethod
    def render_sequence(report: GlobalReport) -> str:
        l = report.l
        total = report.sum_bad_inf
        middle = f"F_{l}^{total.value}" if total.is_point else f"F_{l}^{total}"
        coinv = "?" if report.coinv is None else str(report.coinv)
        return f"0 → Ker → {middle} → F_{l}^{coinv} → Coker → 0"

    @staticmethod
    def render_text(report: GlobalReport) -> str:
        c = report.curve
        lines = [
            f"curve: {c}",
            f"field: F_{c.field.base.order}(t), l = {report.l}",
            f"discriminant: {FunctionFieldService.format_factored(c.invariants.disc)}",
            "",
            f"{'place':<16}{'reduction':<26}{'dim':<6}reason",
        ]
        for pr in report.places:
            dim = "?" if pr.local.dim is None else str(pr.local.dim)
            lines.append(f"{pr.info.place.label:<16}{pr.info.rtype.value:<26}{dim:<6}{pr.local.reason}")
        modl = report.modl
        lines += [
            "",
            f"mod-{report.l} case: {modl.case.value} (torsion rank {modl.torsion_rank}, "
            f"{len(modl.rational_isogenies)} rational isogenies, search complete: {modl.search_complete})",
            f"chi trivial: {modl.chi_trivial}, coinvariant dim: {'undetermined' if report.coinv is None else report.coinv}",
            f"boundary map surjective: {report.surjective}",
            "",
            ReportService.render_sequence(report),
        ]
        if report.ker_dim is not None:
            lines.append(f"ker_dim = {report.ker_dim}, coker_dim = {report.coker_dim}")
        else:
            lines.append("exact sequence not applicable" if report.applicable is False else "exact sequence undetermined")
        for warning in report.warnings:
            lines.append(f"warning: {warning}")
        return "\n".join(lines)
