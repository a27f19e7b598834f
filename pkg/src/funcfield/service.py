from functools import lru_cache, reduce
from itertools import product
from typing import Dict, List, Optional, Sequence, Set, Tuple
import logging

from ..config import settings
from ..exceptions import ArithmeticDomainError, CandidateCapExceeded, InvalidPlaceError
from ..gf.models import FieldElem, FiniteField
from ..gf.service import FiniteFieldService, extension_field
from .models import (
    LocalLeading,
    Place,
    PlaceKind,
    Poly,
    PolynomialRing,
    RatFn,
    RationalFunctionField,
)

logger = logging.getLogger(__name__)

Factorization = List[Tuple[Poly, int]]


@lru_cache(maxsize=None)
def rational_function_field(base: FiniteField, var: str = "t") -> RationalFunctionField:
    return RationalFunctionField(base, var)


@lru_cache(maxsize=None)
def polynomial_ring(base, var: str) -> PolynomialRing:
    return PolynomialRing(base, var)


def _poly_from_index(ring: PolynomialRing, index: int, degree_bound: int) -> Poly:
    field = ring.base
    coeffs = []
    for _ in range(degree_bound):
        index, d = divmod(index, field.order)
        coeffs.append(field.element(d))
    return Poly(ring, coeffs)


def _pth_root_poly(f: Poly) -> Poly:
    p = f.ring.base.p
    return Poly(f.ring, [FiniteFieldService.pth_root(c) for c in f.coeffs[::p]])


def _merge(factors: Factorization) -> Factorization:
    acc: Dict[Poly, int] = {}
    for g, m in factors:
        acc[g] = acc.get(g, 0) + m
    return sorted(acc.items(), key=lambda item: item[0].sort_key())


class FunctionFieldService:

    # polynomial factorization over F_q

    @staticmethod
    def squarefree_decomposition(f: Poly) -> Factorization:
        """Pairs (g, m) with g squarefree, pairwise coprime and f = lc * prod g^m."""
        f = f.monic()
        if f.degree <= 0:
            return []
        df = f.derivative()
        if df.is_zero():
            p = f.ring.base.p
            root = _pth_root_poly(f)
            return _merge([(g, m * p) for g, m in FunctionFieldService.squarefree_decomposition(root)])
        result: Factorization = []
        c = f.gcd(df)
        w = f.exact_div(c)
        i = 1
        while not w.is_one():
            y = w.gcd(c)
            fac = w.exact_div(y)
            if fac.degree > 0:
                result.append((fac, i))
            w = y
            c = c.exact_div(y)
            i += 1
        if c.degree > 0:
            p = f.ring.base.p
            root = _pth_root_poly(c)
            result.extend((g, m * p) for g, m in FunctionFieldService.squarefree_decomposition(root))
        return _merge(result)

    @staticmethod
    def distinct_degree(f: Poly) -> List[Tuple[Poly, int]]:
        q = f.ring.base.order
        x = f.ring.gen
        result = []
        rest = f
        h = x % rest
        i = 1
        while rest.degree >= 2 * i:
            h = h.powmod(q, rest)
            g = rest.gcd(h - x)
            if not g.is_one():
                result.append((g, i))
                rest = rest.exact_div(g)
                h = h % rest
            i += 1
        if rest.degree > 0:
            result.append((rest, rest.degree))
        return result

    @staticmethod
    def equal_degree(f: Poly, d: int) -> List[Poly]:
        """Split a squarefree product of degree-d irreducibles, with deterministic trial polynomials."""
        if f.degree == d:
            return [f]
        field = f.ring.base
        q = field.order
        n = f.degree
        index = q
        while True:
            a = _poly_from_index(f.ring, index, n)
            index += 1
            if a.degree <= 0:
                continue
            if field.p == 2:
                # trace map to F_2
                k = field.n * d
                b = a % f
                t = b
                for _ in range(k - 1):
                    b = (b * b) % f
                    t = t + b
            else:
                t = a.powmod((q ** d - 1) // 2, f) - f.ring.one
            g = f.gcd(t)
            if 0 < g.degree < n:
                return (
                    FunctionFieldService.equal_degree(g, d)
                    + FunctionFieldService.equal_degree(f.exact_div(g), d)
                )

    @staticmethod
    def factor(f: Poly) -> Factorization:
        """
        Monic irreducible factors with multiplicities, ordered by degree and
        then by coefficients from the leading one down.
        """
        if f.is_zero():
            raise ArithmeticDomainError("cannot factor the zero polynomial")
        result: Factorization = []
        for g, m in FunctionFieldService.squarefree_decomposition(f):
            for part, d in FunctionFieldService.distinct_degree(g):
                for irreducible in FunctionFieldService.equal_degree(part, d):
                    result.append((irreducible, m))
        return _merge(result)

    @staticmethod
    def is_irreducible(f: Poly) -> bool:
        if f.degree < 1:
            return False
        factors = FunctionFieldService.factor(f)
        return len(factors) == 1 and factors[0][1] == 1

    # places

    @staticmethod
    def finite_place(pi: Poly) -> Place:
        if not pi.is_monic() or not FunctionFieldService.is_irreducible(pi):
            raise InvalidPlaceError(f"{pi} is not a monic irreducible polynomial")
        base = pi.ring.base
        if pi.degree == 1:
            residue = base
        else:
            residue = extension_field(base, tuple(c.value for c in pi.coeffs), "w")
        return Place(PlaceKind.FINITE, pi, pi.degree, residue)

    @staticmethod
    def infinite_place(field: RationalFunctionField) -> Place:
        return Place(PlaceKind.INFINITY, None, 1, field.base)

    @staticmethod
    def places_of_degree(field: RationalFunctionField, d: int) -> List[Place]:
        ring = field.poly_ring
        q = field.base.order
        places = []
        for index in range(q ** d):
            pi = _poly_from_index(ring, index, d) + ring.gen ** d
            if FunctionFieldService.is_irreducible(pi):
                places.append(FunctionFieldService.finite_place(pi))
        return places

    @staticmethod
    def uniformizer(field: RationalFunctionField, place: Place) -> RatFn:
        if place.is_infinite:
            return field.gen.inverse()
        return field(place.pi)

    # valuations

    @staticmethod
    def poly_valuation(f: Poly, pi: Poly) -> int:
        if f.is_zero():
            raise ArithmeticDomainError("valuation of zero")
        v = 0
        while True:
            q, r = divmod(f, pi)
            if not r.is_zero():
                return v
            f = q
            v += 1

    @staticmethod
    def _split_unit(f: Poly, pi: Poly) -> Tuple[int, Poly]:
        v = 0
        while True:
            q, r = divmod(f, pi)
            if not r.is_zero():
                return v, f
            f = q
            v += 1

    @staticmethod
    def residue_of_poly(f: Poly, place: Place) -> FieldElem:
        r = f % place.pi
        if place.degree == 1:
            return r.coeff(0)
        return FieldElem(place.residue_field, tuple(r.coeff(i).value for i in range(place.degree)))

    @staticmethod
    def valuation(x: RatFn, place: Place) -> int:
        if x.is_zero():
            raise ArithmeticDomainError("valuation of zero is +infinity")
        if place.is_infinite:
            return x.den.degree - x.num.degree
        return (
            FunctionFieldService.poly_valuation(x.num, place.pi)
            - FunctionFieldService.poly_valuation(x.den, place.pi)
        )

    @staticmethod
    def leading_at(x: RatFn, place: Place) -> LocalLeading:
        if x.is_zero():
            raise ArithmeticDomainError("leading coefficient of zero")
        if place.is_infinite:
            # expansion in s = 1/t
            return LocalLeading(place, x.den.degree - x.num.degree, x.num.lc / x.den.lc)
        a, num_unit = FunctionFieldService._split_unit(x.num, place.pi)
        b, den_unit = FunctionFieldService._split_unit(x.den, place.pi)
        leading = (
            FunctionFieldService.residue_of_poly(num_unit, place)
            / FunctionFieldService.residue_of_poly(den_unit, place)
        )
        return LocalLeading(place, a - b, leading)

    @staticmethod
    def reduce_at(x: RatFn, place: Place) -> FieldElem:
        if x.is_zero():
            return place.residue_field.zero
        local = FunctionFieldService.leading_at(x, place)
        if local.valuation < 0:
            raise ArithmeticDomainError(f"{x} is not integral at {place}")
        if local.valuation > 0:
            return place.residue_field.zero
        return place.residue_field.coerce(local.leading)

    @staticmethod
    def invert_variable(x: RatFn, var: str = "s") -> RatFn:
        """x(1/s) as an element of F_q(s)."""
        s_field = rational_function_field(x.field.base, var)
        ring = s_field.poly_ring
        a, b = x.num.degree, x.den.degree
        num = Poly(ring, tuple(reversed(x.num.coeffs)))
        den = Poly(ring, tuple(reversed(x.den.coeffs)))
        s = ring.gen
        if b >= a:
            num = num * s ** (b - a)
        else:
            den = den * s ** (a - b)
        return RatFn(s_field, num, den)

    # square roots and factored display

    @staticmethod
    def sqrt(x: RatFn) -> Optional[RatFn]:
        if x.is_zero():
            return x
        root_lc = FiniteFieldService.sqrt(x.num.lc)
        if root_lc is None:
            return None
        field = x.field
        num = field.poly_ring.one.scale(root_lc)
        den = field.poly_ring.one
        for g, m in FunctionFieldService.factor(x.num):
            if m % 2:
                return None
            num = num * g ** (m // 2)
        for g, m in FunctionFieldService.factor(x.den):
            if m % 2:
                return None
            den = den * g ** (m // 2)
        return RatFn(field, num, den, reduce=False)

    @staticmethod
    def format_factored(x: RatFn, sep: str = "·") -> str:
        def render(f: Poly, with_unit: bool) -> str:
            parts = []
            if with_unit and not f.lc.is_one():
                parts.append(str(f.lc))
            for g, m in FunctionFieldService.factor(f):
                gs = str(g)
                if g.degree > 0 and len(g.coeffs) > 1 and any(c for c in g.coeffs[:-1]):
                    gs = f"({gs})"
                parts.append(gs if m == 1 else f"{gs}^{m}")
            return sep.join(parts) if parts else "1"

        if x.is_zero():
            return "0"
        num = render(x.num, True)
        if x.den.is_one():
            return num
        den = render(x.den, False)
        if sep in den:
            den = f"({den})"
        return f"{num}/{den}"

    # rational roots over F_q(t)

    @staticmethod
    def clear_denominators(f: Poly) -> Tuple[Poly, ...]:
        """Primitive F_q[t] coefficients of a multiple of f (lowest degree first)."""
        field = f.ring.base
        den = reduce(lambda acc, c: (acc * c.den).exact_div(acc.gcd(c.den)), f.coeffs, field.poly_ring.one)
        coeffs = [(c * field(den)).num for c in f.coeffs]
        content = reduce(lambda acc, c: acc.gcd(c) if not c.is_zero() else acc, coeffs, field.poly_ring.zero)
        if not content.is_one():
            coeffs = [c.exact_div(content) for c in coeffs]
        return tuple(coeffs)

    @staticmethod
    def _allowed_exponents(vals: Sequence[Optional[int]], lo: int, hi: int) -> List[int]:
        """Integer slopes e in [lo, hi] where min_i (vals[i] + i*e) is attained twice."""
        points = [(i, v) for i, v in enumerate(vals) if v is not None]
        allowed: Set[int] = set()
        for a in range(len(points)):
            for b in range(a + 1, len(points)):
                (i, vi), (j, vj) = points[a], points[b]
                if (vi - vj) % (j - i):
                    continue
                e = (vi - vj) // (j - i)
                if e < lo or e > hi:
                    continue
                values = [v + k * e for k, v in points]
                low = min(values)
                if values.count(low) >= 2:
                    allowed.add(e)
        return sorted(allowed)

    @staticmethod
    def rational_roots(f: Poly) -> List[RatFn]:
        """
        All roots of f in F_q(t), by the rational root theorem over F_q[t].

        Candidates c*N/D are pruned by Newton polygons at every prime dividing
        the extreme coefficients and at infinity, then by specializations
        t = tau, and finally checked exactly.
        """
        if f.is_zero():
            raise ArithmeticDomainError("rational_roots of the zero polynomial")
        field: RationalFunctionField = f.ring.base
        base = field.base
        roots: List[RatFn] = []
        coeffs = list(FunctionFieldService.clear_denominators(f))
        if coeffs[0].is_zero():
            roots.append(field.zero)
            while coeffs[0].is_zero():
                coeffs.pop(0)
        n = len(coeffs) - 1
        if n == 0:
            return roots
        a0, an = coeffs[0], coeffs[-1]

        primes = _merge(FunctionFieldService.factor(a0) + FunctionFieldService.factor(an))
        choices = []
        for pi, _ in primes:
            vals = [FunctionFieldService.poly_valuation(c, pi) if not c.is_zero() else None for c in coeffs]
            exps = FunctionFieldService._allowed_exponents(vals, -vals[n], vals[0])
            if not exps:
                logger.debug(f"No admissible valuation at {pi}; no rational roots")
                return roots
            choices.append((pi, exps))
        inf_vals = [-c.degree if not c.is_zero() else None for c in coeffs]
        degree_range = sum(c.degree for c in coeffs if not c.is_zero()) + 1
        allowed_inf = set(FunctionFieldService._allowed_exponents(inf_vals, -degree_range, degree_range))

        total = 1
        for _, exps in choices:
            total *= len(exps)
        if total > settings.root_candidate_cap:
            raise CandidateCapExceeded(
                f"{total} candidate numerator/denominator pairs exceed cap {settings.root_candidate_cap}",
                cap=settings.root_candidate_cap,
            )
        logger.debug(f"rational_roots: degree {n}, {total} candidate shapes")

        # specializations where the leading coefficient does not vanish
        specs = []
        for tau in FiniteFieldService.enumerate(base):
            if an(tau).is_zero():
                continue
            values = [c(tau) for c in coeffs]
            local = Poly(polynomial_ring(base, "x"), values)
            specs.append((tau, _field_roots(local)))
            if len(specs) >= 3:
                break

        ring = field.poly_ring
        nonzero = [c for c in FiniteFieldService.enumerate(base) if not c.is_zero()]
        found: List[RatFn] = []
        for exps in product(*[e for _, e in choices]):
            num, den = ring.one, ring.one
            for (pi, _), e in zip(choices, exps):
                if e > 0:
                    num = num * pi ** e
                elif e < 0:
                    den = den * pi ** (-e)
            # v_inf(root) = deg den - deg num
            if (den.degree - num.degree) not in allowed_inf:
                continue
            scalars: Optional[Set[FieldElem]] = None
            for tau, local_roots in specs:
                nv = num(tau)
                if nv.is_zero():
                    continue
                ratio = nv / den(tau)
                allowed = {rho / ratio for rho in local_roots if not rho.is_zero()}
                scalars = allowed if scalars is None else scalars & allowed
                if not scalars:
                    break
            candidates = nonzero if scalars is None else sorted(scalars, key=lambda c: c.index())
            for c in candidates:
                if _is_root(coeffs, num.scale(c), den):
                    found.append(RatFn(field, num.scale(c), den, reduce=False))
        roots.extend(found)
        return sorted(roots, key=_ratfn_key)


def _ratfn_key(x: RatFn) -> Tuple:
    if x.is_zero():
        return (-1,)
    return x.num.sort_key() + x.den.sort_key()


def _is_root(coeffs: Sequence[Poly], num: Poly, den: Poly) -> bool:
    # sum a_i N^i D^(n-i) == 0
    n = len(coeffs) - 1
    total = num.ring.zero
    num_pow = num.ring.one
    den_pows = [num.ring.one]
    for _ in range(n):
        den_pows.append(den_pows[-1] * den)
    for i, c in enumerate(coeffs):
        if not c.is_zero():
            total = total + c * num_pow * den_pows[n - i]
        num_pow = num_pow * num
    return total.is_zero()


def _field_roots(f: Poly) -> Set[FieldElem]:
    """Roots in F_q of a polynomial over F_q, through gcd with x^q - x."""
    if f.is_zero():
        return set(FiniteFieldService.enumerate(f.ring.base))
    q = f.ring.base.order
    x = f.ring.gen
    g = f.gcd(x.powmod(q, f) - x) if f.degree > 0 else f.ring.one
    roots: Set[FieldElem] = set()
    if g.degree <= 0:
        return roots
    for part in FunctionFieldService.equal_degree(g, 1):
        roots.add(-part.coeff(0))
    return roots


def field_roots(f: Poly) -> List[FieldElem]:
    return sorted(_field_roots(f), key=lambda c: c.index())
