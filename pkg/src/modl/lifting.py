"""
Search for kernel polynomials of rational l-isogenies (l >= 5).

psi_l of the working model is specialized at a good fibre t = tau and factored
over F_q. Every combination of factors of total degree (l-1)/2 that is a kernel
polynomial on the special fibre is Hensel-lifted t-adically in s = t - tau far
enough to pin down coefficients of bounded degree, then verified over F_q(t).
"""
from fractions import Fraction
from math import floor
from typing import Iterator, List, Optional, Sequence, Tuple
import logging

from ..config import settings
from ..curve.models import Curve
from ..curve.service import CurveService
from ..ellgroup.service import EllipticGroupService, x_ring
from ..funcfield.models import Poly, PolynomialRing
from ..funcfield.service import FunctionFieldService, polynomial_ring
from ..gf.models import FieldElem
from ..gf.service import FiniteFieldService
from .models import IsogenySearch

logger = logging.getLogger(__name__)


def coefficient_degree_bound(coeffs: Sequence[Poly], d: int) -> int:
    """
    Bound on deg_t of the coefficients of any monic degree-d factor: every
    root has t-degree at most h = max deg(c_i)/(N - i), and the coefficients
    are elementary symmetric functions of d roots.
    """
    n = len(coeffs) - 1
    h = Fraction(0)
    for i, c in enumerate(coeffs[:-1]):
        if not c.is_zero():
            h = max(h, Fraction(c.degree, n - i))
    return floor(d * h)


def degree_combinations(degrees: Sequence[int], target: int) -> Iterator[Tuple[int, ...]]:
    """Index subsets whose degrees sum to target, in lexicographic order."""

    def walk(start: int, remaining: int, chosen: Tuple[int, ...]):
        if remaining == 0:
            yield chosen
            return
        for i in range(start, len(degrees)):
            if degrees[i] <= remaining:
                yield from walk(i + 1, remaining - degrees[i], chosen + (i,))

    return walk(0, target, ())


def hensel_lift(expansion: List[Poly], k0: Poly, h0: Poly, precision: int) -> Optional[List[Poly]]:
    """
    Lift psi = k0 * h0 (mod s) to psi = K * H (mod s^precision) with K, H monic in x.
    `expansion[k]` is the coefficient of s^k of psi. Returns the s-adic digits of K.
    """
    g, a, b = k0.xgcd(h0)
    if not g.is_one():
        return None
    ring = k0.ring
    ks, hs = [k0], [h0]
    for k in range(1, precision):
        error = expansion[k] if k < len(expansion) else ring.zero
        for i in range(1, k):
            error = error - ks[i] * hs[k - i]
        if error.is_zero():
            ks.append(ring.zero)
            hs.append(ring.zero)
            continue
        quotient, remainder = divmod(error * b, k0)
        ks.append(remainder)
        hs.append(error * a + quotient * h0)
    return ks


class HenselIsogenySearch:

    def __init__(self, working: Curve, l: int):
        self.curve = working
        self.l = l
        self.field = working.field
        self.base = working.field.base
        self.tring: PolynomialRing = working.field.poly_ring
        self.xring_base: PolynomialRing = polynomial_ring(self.base, "x")

    def _good_fibre(self) -> Optional[FieldElem]:
        disc = self.curve.invariants.disc
        for tau in FiniteFieldService.enumerate(self.base):
            if not disc.evaluate(tau).is_zero():
                return tau
        return None

    def run(self) -> IsogenySearch:
        l = self.l
        d = (l - 1) // 2
        result = IsogenySearch()
        psi = EllipticGroupService.division_poly(self.curve, l).psi
        coeffs = FunctionFieldService.clear_denominators(psi)
        bound = coefficient_degree_bound(coeffs, d)
        precision = bound + 1 + settings.hensel_extra_precision

        tau = self._good_fibre()
        if tau is None:
            result.complete = False
            result.notes.append("no fibre of good reduction over the constant field")
            logger.warning(f"Isogeny search for l = {l}: no good fibre over {self.base}")
            return result

        fibre = CurveService.specialize(self.curve, tau)
        lead = coeffs[-1](tau)
        special = Poly(self.xring_base, [c(tau) for c in coeffs]).scale(lead.inverse())
        factors = FunctionFieldService.factor(special)
        if any(m > 1 for _, m in factors):
            result.complete = False
            result.notes.append(f"psi_{l} is not squarefree at t = {tau}")
            return result
        logger.debug(
            f"Isogeny search l = {l}: tau = {tau}, factor degrees {[g.degree for g, _ in factors]}, "
            f"coefficient degree bound {bound}"
        )

        # s-adic expansion of psi(s + tau, x) / lead
        shift = self.tring.gen + tau
        shifted = [self.tring.coerce(c(shift)).scale(lead.inverse()) for c in coeffs]
        expansion = []
        for k in range(precision):
            expansion.append(Poly(self.xring_base, [c.coeff(k) for c in shifted]))

        degrees = [g.degree for g, _ in factors]
        tried = 0
        for combo in degree_combinations(degrees, d):
            tried += 1
            if tried > settings.isogeny_combination_cap:
                result.complete = False
                result.notes.append(f"combination cap {settings.isogeny_combination_cap} reached")
                logger.warning(f"Isogeny search l = {l}: combination cap reached")
                break
            k0 = self.xring_base.one
            for i in combo:
                k0 = k0 * factors[i][0]
            if not EllipticGroupService.is_kernel_polynomial(fibre, k0, l):
                continue
            kernel = self._lift(expansion, k0, special.exact_div(k0), precision, bound, tau)
            if kernel is None:
                continue
            if EllipticGroupService.is_kernel_polynomial(self.curve, kernel, l):
                logger.info(f"Found rational {l}-isogeny kernel {kernel}")
                result.isogenies.append(EllipticGroupService.isogeny(self.curve, kernel, l, "hensel"))
        return result

    def _lift(self, expansion, k0: Poly, h0: Poly, precision: int, bound: int, tau) -> Optional[Poly]:
        digits = hensel_lift(expansion, k0, h0, precision)
        if digits is None:
            return None
        back = self.tring.gen - tau
        coeffs = []
        for j in range(k0.degree + 1):
            in_s = Poly(self.tring, [digit.coeff(j) for digit in digits])
            if in_s.degree > bound:
                return None
            coeffs.append(self.field(in_s(back)))
        return x_ring(self.curve).from_coeffs(coeffs)
