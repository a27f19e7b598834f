from typing import List, Optional, Tuple
import logging

from ..exceptions import (
    ArithmeticDomainError,
    UnsupportedCharacteristicError,
)
from ..funcfield.models import Place, RatFn, RationalFunctionField
from ..funcfield.service import FunctionFieldService
from .models import Curve, Invariants, LocalModel, Transform

logger = logging.getLogger(__name__)


def require_large_characteristic(field) -> None:
    if field.characteristic <= 3:
        raise UnsupportedCharacteristicError(
            f"characteristic {field.characteristic} is not supported (need p > 3)",
            p=field.characteristic,
        )


def _valuation_or_none(x: RatFn, place: Place) -> Optional[int]:
    if x.is_zero():
        return None
    return FunctionFieldService.valuation(x, place)


class CurveService:

    @staticmethod
    def invariants(c: Curve) -> Invariants:
        return c.invariants

    @staticmethod
    def apply_transform(c: Curve, tr: Transform) -> Curve:
        u, r, s, t = tr.u, tr.r, tr.s, tr.t
        if u.is_zero():
            raise ArithmeticDomainError("change of variables with u = 0")
        a1, a2, a3, a4, a6 = c.a
        ui = u.inverse()
        ui2 = ui * ui
        ui3 = ui2 * ui
        new = (
            (a1 + 2 * s) * ui,
            (a2 - s * a1 + 3 * r - s * s) * ui2,
            (a3 + r * a1 + 2 * t) * ui3,
            (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) * ui2 * ui2,
            (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) * ui3 * ui3,
        )
        return Curve(c.field, new)

    @staticmethod
    def complete_square(c: Curve) -> Tuple[Curve, Transform]:
        require_large_characteristic(c.field)
        field = c.field
        if c.is_short:
            return c, Transform.identity(field)
        half = field.one / 2
        tr = Transform(field.one, field.zero, -c.a1 * half, -c.a3 * half)
        return CurveService.apply_transform(c, tr), tr

    @staticmethod
    def integral_model(c: Curve) -> Tuple[Curve, Transform]:
        """Scale so that every a_i lies in F_q[t]."""
        field: RationalFunctionField = c.field
        ring = field.poly_ring
        m = ring.one
        for a in c.a:
            m = (m * a.den).exact_div(m.gcd(a.den))
        if m.is_one():
            return c, Transform.identity(field)
        tr = Transform(field(m).inverse(), field.zero, field.zero, field.zero)
        return CurveService.apply_transform(c, tr), tr

    @staticmethod
    def minimal_model_at(c: Curve, place: Place) -> LocalModel:
        require_large_characteristic(c.field)
        field: RationalFunctionField = c.field
        pi = FunctionFieldService.uniformizer(field, place)
        transform = Transform.identity(field)
        model = c

        k = 0
        for i, a in zip((1, 2, 3, 4, 6), c.a):
            v = _valuation_or_none(a, place)
            if v is not None and v < 0:
                k = max(k, -((v // i)))
        if k > 0:
            # u = pi^-k, so a_i' = pi^(ik) a_i
            step = Transform(pi ** (-k), field.zero, field.zero, field.zero)
            model = CurveService.apply_transform(model, step)
            transform = transform.compose(step)

        while True:
            inv = model.invariants
            vdisc = FunctionFieldService.valuation(inv.disc, place)
            vc4 = _valuation_or_none(inv.c4, place)
            if vdisc < 12 or (vc4 is not None and vc4 < 4):
                break
            a1, a3 = model.a1, model.a3
            r = -inv.b2 / 12
            shift = Transform(field.one, r, -a1 / 2, -(a3 + r * a1) / 2)
            model = CurveService.apply_transform(model, shift)
            scale = Transform(pi, field.zero, field.zero, field.zero)
            model = CurveService.apply_transform(model, scale)
            transform = transform.compose(shift).compose(scale)
            logger.debug(f"Reduced model at {place}: vdisc {vdisc} -> {vdisc - 12}")

        vj = _valuation_or_none(inv.j, place)
        return LocalModel(place, model, transform, vdisc, vc4, vj)

    @staticmethod
    def bad_places(c: Curve) -> List[Place]:
        require_large_characteristic(c.field)
        field: RationalFunctionField = c.field
        disc = c.invariants.disc
        candidates = {}
        polys = [disc.num, disc.den] + [a.den for a in c.a]
        for f in polys:
            if f.degree <= 0:
                continue
            for g, _ in FunctionFieldService.factor(f):
                candidates[g] = True
        places = [FunctionFieldService.finite_place(g) for g in candidates]
        places.append(FunctionFieldService.infinite_place(field))
        bad = [v for v in places if CurveService.minimal_model_at(c, v).vdisc > 0]
        bad.sort(key=lambda v: v.sort_key())
        logger.info(f"Bad places: {[str(v) for v in bad]}")
        return bad

    @staticmethod
    def reduce_curve(local: LocalModel) -> Curve:
        """Reduction of a good-reduction minimal model to the residue field."""
        if local.vdisc != 0:
            raise ArithmeticDomainError(f"reduction at {local.place} is not good (vdisc = {local.vdisc})")
        coeffs = [FunctionFieldService.reduce_at(a, local.place) for a in local.model.a]
        return Curve(local.place.residue_field, coeffs)

    @staticmethod
    def specialize(c: Curve, tau) -> Curve:
        """Evaluate the coefficients at t = tau; raises on poles or singular fibres."""
        return Curve(c.field.base, [a.evaluate(tau) for a in c.a])
