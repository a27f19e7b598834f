from typing import Dict, List, Tuple
import logging

from ..config import settings
from ..curve.models import Curve, Transform
from ..curve.service import require_large_characteristic
from ..exceptions import (
    ConsistencyError,
    EnumerationBoundExceeded,
    InvalidKernelError,
    LEqualsCharacteristicError,
    NotPrimeError,
    ResourceBoundExceeded,
)
from ..funcfield.models import Poly, PolynomialRing
from ..funcfield.service import field_roots, polynomial_ring
from ..gf.service import FiniteFieldService, is_prime
from .models import DivisionPoly, IsogenyData, Point

logger = logging.getLogger(__name__)


def check_prime_l(field, l: int) -> None:
    if not is_prime(l):
        raise NotPrimeError(f"l = {l} is not prime")
    if l == field.characteristic:
        raise LEqualsCharacteristicError(f"l = {l} equals the characteristic", l=l)


def x_ring(c: Curve) -> PolynomialRing:
    return polynomial_ring(c.field, "x")


def _two_torsion_cubic(c: Curve) -> Poly:
    inv = c.invariants
    return x_ring(c).from_coeffs([inv.b6, 2 * inv.b4, inv.b2, 4])


class _DivisionTable:
    """
    f_n with psi_n = f_n for odd n and psi_n = psi_2 f_n for even n, where
    psi_2^2 = F = 4x^3 + b2 x^2 + 2 b4 x + b6. Every f_n is a polynomial in x.
    """

    def __init__(self, c: Curve):
        ring = x_ring(c)
        inv = c.invariants
        b2, b4, b6, b8 = inv.b2, inv.b4, inv.b6, inv.b8
        self.F = _two_torsion_cubic(c)
        self.F2 = self.F * self.F
        self.cache: Dict[int, Poly] = {
            0: ring.zero,
            1: ring.one,
            2: ring.one,
            3: ring.from_coeffs([b8, 3 * b6, 3 * b4, b2, 3]),
            4: ring.from_coeffs([
                b4 * b8 - b6 * b6,
                b2 * b8 - b4 * b6,
                10 * b8,
                10 * b6,
                5 * b4,
                b2,
                2,
            ]),
        }

    def __call__(self, n: int) -> Poly:
        if n in self.cache:
            return self.cache[n]
        m = n // 2
        f = self
        if n % 2:
            if m % 2 == 0:
                value = self.F2 * f(m + 2) * f(m) ** 3 - f(m - 1) * f(m + 1) ** 3
            else:
                value = f(m + 2) * f(m) ** 3 - self.F2 * f(m - 1) * f(m + 1) ** 3
        else:
            value = f(m) * (f(m + 2) * f(m - 1) ** 2 - f(m - 2) * f(m + 1) ** 2)
        self.cache[n] = value
        return value

    def x_multiple(self, k: int) -> Tuple[Poly, Poly]:
        """(N, D) with x([k]P) = N(x)/D(x)."""
        x = self.F.ring.gen
        fk, fm, fp = self(k), self(k - 1), self(k + 1)
        if k % 2:
            return x * fk * fk - self.F * fm * fp, fk * fk
        return x * self.F * fk * fk - fm * fp, self.F * fk * fk


def _generator_mod_pm1(l: int) -> int:
    """Smallest k >= 2 generating (Z/l)^x / {+-1}."""
    for k in range(2, l):
        seen = {1, l - 1}
        value = 1
        for _ in range(l):
            value = value * k % l
            seen.add(value)
            seen.add(l - value)
        if len(seen) == l - 1:
            return k
    return 2


class EllipticGroupService:

    @staticmethod
    def division_poly(c: Curve, l: int) -> DivisionPoly:
        require_large_characteristic(c.field)
        check_prime_l(c.field, l)
        if l > settings.max_division_l:
            raise ResourceBoundExceeded(
                f"l = {l} exceeds the division polynomial bound {settings.max_division_l}",
                bound=settings.max_division_l,
            )
        if l == 2:
            return DivisionPoly(2, _two_torsion_cubic(c), c)
        psi = _DivisionTable(c)(l)
        logger.debug(f"psi_{l} has degree {psi.degree}")
        return DivisionPoly(l, psi, c)

    @staticmethod
    def x_multiplication(c: Curve, k: int) -> Tuple[Poly, Poly]:
        return _DivisionTable(c).x_multiple(k)

    @staticmethod
    def is_kernel_polynomial(c: Curve, kernel: Poly, l: int) -> bool:
        """
        kernel divides psi_l, has degree (l-1)/2 (1 for l = 2), is squarefree,
        and its roots are permuted by x -> x([g]P) for a generator g of
        (Z/l)^x / {+-1}. Tested by divisibility, without extracting roots.
        """
        if kernel.is_zero() or not kernel.is_monic():
            return False
        expected = 1 if l == 2 else (l - 1) // 2
        if kernel.degree != expected:
            return False
        psi = EllipticGroupService.division_poly(c, l).psi
        if not (psi % kernel).is_zero():
            return False
        if not kernel.gcd(kernel.derivative()).is_one():
            return False
        if l <= 3:
            return True
        g = _generator_mod_pm1(l)
        num, den = _DivisionTable(c).x_multiple(g)
        num, den = num % kernel, den % kernel
        if not kernel.gcd(den).is_one():
            return False
        # homogenized K(N/D) * D^deg K reduced mod K
        total = kernel.ring.zero
        d = kernel.degree
        den_pows = [kernel.ring.one]
        for _ in range(d):
            den_pows.append((den_pows[-1] * den) % kernel)
        num_pow = kernel.ring.one
        for i, k_i in enumerate(kernel.coeffs):
            total = (total + (num_pow * den_pows[d - i]).scale(k_i)) % kernel
            num_pow = (num_pow * num) % kernel
        return total.is_zero()

    @staticmethod
    def kernel_from_point(P: Point, l: int) -> Poly:
        ring = x_ring(P.curve)
        x = ring.gen
        if l == 2:
            return x - P.x
        kernel = ring.one
        Q = P
        for _ in range((l - 1) // 2):
            kernel = kernel * (x - Q.x)
            Q = Q + P
        return kernel

    @staticmethod
    def transform_kernel_poly(kernel: Poly, tr: Transform, target: Curve) -> Poly:
        """Kernel polynomial in the x' coordinate of the model reached by tr."""
        ring = x_ring(target)
        image = ring.from_coeffs([tr.r, tr.u * tr.u])
        result = ring.zero
        for c in reversed(kernel.coeffs):
            result = result * image + c
        return result.monic()

    @staticmethod
    def velu_quotient(c: Curve, kernel: Poly, l: int, verify: bool = True) -> Curve:
        require_large_characteristic(c.field)
        check_prime_l(c.field, l)
        if verify and not EllipticGroupService.is_kernel_polynomial(c, kernel, l):
            raise InvalidKernelError(f"{kernel} is not the kernel polynomial of a subgroup of order {l}")
        inv = c.invariants
        b2, b4, b6 = inv.b2, inv.b4, inv.b6
        a1, a2, a3, a4, a6 = c.a
        if l == 2:
            x0 = -kernel.coeff(0)
            t = 3 * x0 * x0 + b2 * x0 / 2 + b4 / 2
            w = x0 * t
        else:
            d = kernel.degree
            s1 = -kernel.coeff(d - 1)
            s2 = kernel.coeff(d - 2) if d >= 2 else c.field.zero
            s3 = -kernel.coeff(d - 3) if d >= 3 else c.field.zero
            p2 = s1 * s1 - 2 * s2
            p3 = s1 * s1 * s1 - 3 * s1 * s2 + 3 * s3
            t = 6 * p2 + b2 * s1 + d * b4
            w = 10 * p3 + 2 * b2 * p2 + 3 * b4 * s1 + d * b6
        return Curve(c.field, [a1, a2, a3, a4 - 5 * t, a6 - b2 * t - 7 * w])

    @staticmethod
    def isogeny(c: Curve, kernel: Poly, l: int, origin: str = "search") -> IsogenyData:
        codomain = EllipticGroupService.velu_quotient(c, kernel, l)
        return IsogenyData(kernel, c, codomain, l, origin)

    # finite fields

    @staticmethod
    def _check_bound(c: Curve) -> None:
        if c.field.order > settings.enum_bound:
            raise EnumerationBoundExceeded(
                f"field of order {c.field.order} exceeds enumeration bound {settings.enum_bound}",
                bound=settings.enum_bound,
            )

    @staticmethod
    def count_points(c: Curve) -> int:
        EllipticGroupService._check_bound(c)
        field = c.field
        q = field.order
        a1, a2, a3, a4, a6 = c.a
        elements = list(FiniteFieldService.enumerate(field))
        total = 1
        if field.p == 2:
            for x in elements:
                for y in elements:
                    if c.contains(x, y):
                        total += 1
        else:
            # (2y + a1 x + a3)^2 = 4(x^3 + a2 x^2 + a4 x + a6) + (a1 x + a3)^2
            square_counts: Dict = {}
            for z in elements:
                key = (z * z).value
                square_counts[key] = square_counts.get(key, 0) + 1
            for x in elements:
                h = a1 * x + a3
                disc = 4 * (x * x * x + a2 * x * x + a4 * x + a6) + h * h
                total += square_counts.get(disc.value, 0)
        if (total - q - 1) ** 2 > 4 * q:
            raise ConsistencyError(f"point count {total} violates the Hasse bound for q = {q}")
        return total

    @staticmethod
    def enumerate_points(c: Curve) -> List[Point]:
        EllipticGroupService._check_bound(c)
        elements = list(FiniteFieldService.enumerate(c.field))
        points = [Point.identity(c)]
        for x in elements:
            for y in elements:
                if c.contains(x, y):
                    points.append(Point(c, x, y))
        return points

    @staticmethod
    def l_torsion_rank(c: Curve, l: int) -> int:
        """dim_{F_l} of E(F_q)[l], counting points above the F_q-roots of psi_l."""
        EllipticGroupService._check_bound(c)
        psi = EllipticGroupService.division_poly(c, l).psi
        a1, a2, a3, a4, a6 = c.a
        count = 1
        for x in field_roots(psi):
            if l == 2:
                count += 1
                continue
            h = a1 * x + a3
            disc = 4 * (x * x * x + a2 * x * x + a4 * x + a6) + h * h
            if FiniteFieldService.is_square(disc):
                count += 1 if disc.is_zero() else 2
        ranks = {1: 0, l: 1, l * l: 2}
        if count not in ranks:
            raise ConsistencyError(f"found {count} points of order dividing {l}")
        return ranks[count]

