from functools import lru_cache
from math import gcd
from typing import Iterator, List, Optional, Sequence, Tuple
import logging

from ..config import settings
from ..exceptions import (
    ArithmeticDomainError,
    EnumerationBoundExceeded,
    NotPrimeError,
    UnsupportedInputError,
)
from .models import ExtensionField, FieldElem, FiniteField, PrimeField

logger = logging.getLogger(__name__)

MAX_FIELD_ORDER = 10 ** 6


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _poly_mod_p(f: List[int], g: List[int], p: int) -> List[int]:
    """Remainder of f by monic g over F_p; coefficient lists are lowest degree first."""
    r = list(f)
    dg = len(g) - 1
    while len(r) - 1 >= dg and r:
        c = r[-1] % p
        if c:
            shift = len(r) - 1 - dg
            for i, gc in enumerate(g):
                r[shift + i] = (r[shift + i] - c * gc) % p
        r.pop()
        while r and r[-1] % p == 0:
            r.pop()
    return r


def _monic_polys(p: int, degree: int) -> Iterator[List[int]]:
    # lexicographic in c0 + c1*p + ... so that outputs are reproducible
    for index in range(p ** degree):
        coeffs = []
        for _ in range(degree):
            index, c = divmod(index, p)
            coeffs.append(c)
        yield coeffs + [1]


def is_irreducible_mod_p(coeffs: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= n/2."""
    f = [c % p for c in coeffs]
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    for d in range(1, n // 2 + 1):
        for g in _monic_polys(p, d):
            if not _poly_mod_p(f, g, p):
                return False
    return True


@lru_cache(maxsize=None)
def first_irreducible_modulus(p: int, n: int) -> Tuple[int, ...]:
    for coeffs in _monic_polys(p, n):
        if is_irreducible_mod_p(coeffs, p):
            return tuple(coeffs)
    raise UnsupportedInputError(f"no irreducible polynomial of degree {n} over F_{p}")


@lru_cache(maxsize=None)
def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


@lru_cache(maxsize=None)
def extension_field(base: FiniteField, modulus: Tuple, name: str = "g") -> ExtensionField:
    return ExtensionField(base, modulus, name)


class FiniteFieldService:

    @staticmethod
    def get_field(p: int, n: int = 1, modulus: Optional[Sequence[int]] = None) -> FiniteField:
        """
        Build F_{p^n}. Without an explicit modulus the first irreducible
        polynomial in lexicographic order is used, e.g. g^2+2 for F_25.
        """
        if not is_prime(p):
            raise NotPrimeError(f"characteristic {p} is not prime")
        if n < 1:
            raise UnsupportedInputError(f"extension degree must be >= 1, got {n}")
        if p ** n > MAX_FIELD_ORDER:
            raise UnsupportedInputError(f"field order {p}^{n} exceeds {MAX_FIELD_ORDER}")
        base = prime_field(p)
        if n == 1:
            return base
        if modulus is None:
            coeffs = first_irreducible_modulus(p, n)
        else:
            coeffs = tuple(c % p for c in modulus)
            if len(coeffs) != n + 1 or coeffs[-1] != 1:
                raise UnsupportedInputError(f"modulus must be monic of degree {n}")
            if not is_irreducible_mod_p(coeffs, p):
                raise UnsupportedInputError("field modulus is not irreducible")
        logger.debug(f"Building GF({p}^{n}) with modulus {coeffs}")
        return extension_field(base, coeffs, "g")

    @staticmethod
    def is_lth_power(x: FieldElem, l: int) -> bool:
        if x.is_zero():
            raise ArithmeticDomainError("is_lth_power is undefined at 0")
        q = x.field.order
        g = gcd(l, q - 1)
        if g == 1:
            return True
        return (x ** ((q - 1) // g)).is_one()

    @staticmethod
    def enumerate(field: FiniteField) -> Iterator[FieldElem]:
        if field.order > settings.enum_bound:
            raise EnumerationBoundExceeded(
                f"field of order {field.order} exceeds enumeration bound {settings.enum_bound}",
                bound=settings.enum_bound,
            )
        return field.elements()

    @staticmethod
    def is_square(x: FieldElem) -> bool:
        if x.is_zero():
            return True
        if x.field.p == 2:
            return True
        return (x ** ((x.field.order - 1) // 2)).is_one()

    @staticmethod
    def sqrt(x: FieldElem) -> Optional[FieldElem]:
        """Tonelli-Shanks; returns None for non-squares."""
        field = x.field
        if x.is_zero():
            return field.zero
        if field.p == 2:
            return x ** (field.order // 2)
        if not FiniteFieldService.is_square(x):
            return None
        q = field.order
        s, m = 0, q - 1
        while m % 2 == 0:
            s += 1
            m //= 2
        z = _non_residue(field)
        c = z ** m
        r = x ** ((m + 1) // 2)
        t = x ** m
        while not t.is_one():
            i, t2 = 0, t
            while not t2.is_one():
                t2 = t2 * t2
                i += 1
            b = c ** (2 ** (s - i - 1))
            r = r * b
            c = b * b
            t = t * c
            s = i
        return r

    @staticmethod
    def pth_root(x: FieldElem) -> FieldElem:
        return x ** (x.field.order // x.field.p)


@lru_cache(maxsize=None)
def _non_residue(field: FiniteField) -> FieldElem:
    half = (field.order - 1) // 2
    for i in range(1, field.order):
        z = field.element(i)
        if not (z ** half).is_one():
            return z
    raise ArithmeticDomainError(f"{field} has no quadratic non-residue")

