from typing import Dict, List, Optional, Sequence, Tuple
import logging

from ..curve.models import Curve
from ..curve.service import CurveService, require_large_characteristic
from ..ellgroup.models import IsogenyData, Point
from ..ellgroup.service import EllipticGroupService, check_prime_l, x_ring
from ..exceptions import ConsistencyError
from ..funcfield.models import Poly
from ..funcfield.service import FunctionFieldService
from .lifting import HenselIsogenySearch
from .models import IsogenySearch, ModLCase, ModLClass, RationalTorsion, WorkingModel

logger = logging.getLogger(__name__)

COINVARIANT_TABLE: Dict[ModLCase, Tuple[Optional[int], Optional[int]]] = {
    # case: (chi trivial, chi non-trivial)
    ModLCase.FULL_TORSION: (2, 2),
    ModLCase.SC: (1, 1),
    ModLCase.B: (1, 1),
    ModLCase.BPRIME: (1, 0),
    ModLCase.BOREL_OTHER: (None, None),
    ModLCase.NO_BOREL_FOUND: (None, None),
}


def _torsion_on_working(w: Curve, l: int) -> List[Point]:
    """Non-zero points of W(F)[l] on a model with a1 = a3 = 0."""
    if l == 2:
        cubic = Poly(x_ring(w), [w.a6, w.a4, w.a2, w.field.one])
        return [Point(w, x, w.field.zero) for x in FunctionFieldService.rational_roots(cubic)]
    psi = EllipticGroupService.division_poly(w, l).psi
    points: List[Point] = []
    for x in FunctionFieldService.rational_roots(psi):
        rhs = x * x * x + w.a2 * x * x + w.a4 * x + w.a6
        y = FunctionFieldService.sqrt(rhs)
        if y is None:
            continue
        points.append(Point(w, x, y))
        if not y.is_zero():
            points.append(Point(w, x, -y))
    return points


class ModLService:

    @staticmethod
    def working_model(c: Curve) -> WorkingModel:
        """Integral model with a1 = a3 = 0; x-coordinates are unchanged by the square completion."""
        require_large_characteristic(c.field)
        integral, tr1 = CurveService.integral_model(c)
        w, tr2 = CurveService.complete_square(integral)
        return WorkingModel(w, tr1.compose(tr2))

    @staticmethod
    def rational_l_torsion(c: Curve, l: int) -> RationalTorsion:
        require_large_characteristic(c.field)
        check_prime_l(c.field, l)
        working = ModLService.working_model(c)
        on_w = _torsion_on_working(working.curve, l)
        count = len(on_w) + 1
        ranks = {1: 0, l: 1, l * l: 2}
        if count not in ranks:
            raise ConsistencyError(f"found {count} rational points of order dividing {l}")
        tr = working.transform
        points = [Point(c, *tr.point_to_original(P.x, P.y)) for P in on_w]
        for P in points:
            if not P.is_on_curve():
                raise ConsistencyError(f"torsion point {P} is not on the input curve")
        logger.debug(f"E(F)[{l}] has rank {ranks[count]}")
        return RationalTorsion(ranks[count], points)

    @staticmethod
    def find_rational_isogenies(c: Curve, l: int, candidates: Sequence[Poly] = ()) -> IsogenySearch:
        """
        Kernel polynomials of rational l-isogenies. For l = 2, 3 the kernels are
        linear and the search is complete. For l >= 5 the kernels generated by
        rational torsion points, the Hensel search and any verified candidates
        are collected; completeness comes from the Hensel search.
        """
        require_large_characteristic(c.field)
        check_prime_l(c.field, l)
        working = ModLService.working_model(c)
        w, tr = working.curve, working.transform
        ring = x_ring(w)
        x = ring.gen
        found: Dict[Poly, str] = {}
        result = IsogenySearch()

        if l <= 3:
            target = Poly(ring, [w.a6, w.a4, w.a2, w.field.one]) if l == 2 else EllipticGroupService.division_poly(w, 3).psi
            for root in FunctionFieldService.rational_roots(target):
                found.setdefault(x - root, "search")
        else:
            for P in _torsion_on_working(w, l):
                found.setdefault(EllipticGroupService.kernel_from_point(P, l), "torsion")
            search = HenselIsogenySearch(w, l).run()
            result.complete = search.complete
            result.notes.extend(search.notes)
            for iso in search.isogenies:
                found.setdefault(iso.kernel_poly, "hensel")

        for candidate in candidates:
            on_w = EllipticGroupService.transform_kernel_poly(candidate, tr, w)
            if EllipticGroupService.is_kernel_polynomial(w, on_w, l):
                found.setdefault(on_w, "candidate")
            else:
                result.notes.append(f"candidate {candidate} rejected: not a kernel polynomial of degree {l}")
                logger.info(f"Rejected candidate kernel {candidate}")

        back = tr.inverse()
        for kernel in sorted(found, key=lambda k: k.sort_key()):
            codomain = EllipticGroupService.velu_quotient(w, kernel, l, verify=True)
            original = EllipticGroupService.transform_kernel_poly(kernel, back, c)
            result.isogenies.append(IsogenyData(original, c, codomain, l, found[kernel]))
        logger.info(f"Found {len(result.isogenies)} rational {l}-isogenies (complete: {result.complete})")
        return result

    @staticmethod
    def coinvariant_dim(case: ModLCase, chi_trivial: bool) -> Optional[int]:
        trivial, nontrivial = COINVARIANT_TABLE[case]
        return trivial if chi_trivial else nontrivial

    @staticmethod
    def classify(c: Curve, l: int, candidates: Sequence[Poly] = ()) -> ModLClass:
        require_large_characteristic(c.field)
        check_prime_l(c.field, l)
        q = c.field.base.order
        chi = (q - 1) % l == 0
        torsion = ModLService.rational_l_torsion(c, l)
        search = ModLService.find_rational_isogenies(c, l, candidates)
        isogenies = search.isogenies
        notes = list(search.notes)

        def build(case: ModLCase, reason: str, coinv: Optional[int] = None, known: bool = True) -> ModLClass:
            if known:
                coinv = ModLService.coinvariant_dim(case, chi)
            return ModLClass(
                l=l,
                torsion_rank=torsion.rank,
                torsion_points=torsion.points,
                rational_isogenies=isogenies,
                case=case,
                chi_trivial=chi,
                coinv_dim=coinv,
                search_complete=search.complete,
                reason=reason,
                notes=notes,
            )

        if torsion.rank == 2:
            if not chi:
                raise ConsistencyError(f"full rational {l}-torsion but {l} does not divide q - 1 = {q - 1}")
            return build(ModLCase.FULL_TORSION, "all l-torsion is rational")

        if torsion.rank == 1:
            if len(isogenies) > 1:
                return build(ModLCase.SC, f"rational {l}-torsion and {len(isogenies)} stable subgroups")
            if search.complete:
                return build(ModLCase.BPRIME, "rational l-torsion and a single stable subgroup")
            logger.warning(f"l = {l}: isogeny search incomplete, a second stable subgroup may exist")
            return build(
                ModLCase.BPRIME,
                "rational l-torsion, one stable subgroup found by an incomplete search",
                coinv=1 if chi else None,
                known=False,
            )

        for iso in isogenies:
            if ModLService.rational_l_torsion(iso.codomain, l).rank > 0:
                return build(ModLCase.B, "quotient by a rational subgroup has rational l-torsion")
        if isogenies:
            reason = "rational isogeny without rational l-torsion on either side"
            if not search.complete:
                reason += "; isogeny search incomplete"
            return build(ModLCase.BOREL_OTHER, reason)
        if not search.complete:
            return build(ModLCase.NO_BOREL_FOUND, "no rational isogeny found; search incomplete")
        return build(ModLCase.NO_BOREL_FOUND, "no rational isogeny exists")

    @staticmethod
    def surjectivity_flag(cls: ModLClass) -> bool:
        return cls.case in (ModLCase.FULL_TORSION, ModLCase.SC)
