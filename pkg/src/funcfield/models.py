from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

from ..exceptions import ArithmeticDomainError
from ..gf.models import FieldElem, FiniteField


def wrap_compound(s: str) -> str:
    body = s[1:] if s.startswith("-") else s
    if any(ch in body for ch in "+-*/"):
        return f"({s})"
    return s


def format_terms(terms: Sequence[Tuple[int, str]], var: str) -> str:
    """Render (exponent, coefficient string) pairs, highest exponent first."""
    parts = []
    for e, cs in terms:
        if e == 0:
            parts.append(cs)
            continue
        mono = var if e == 1 else f"{var}^{e}"
        if cs == "1":
            parts.append(mono)
        elif cs == "-1":
            parts.append(f"-{mono}")
        else:
            parts.append(f"{wrap_compound(cs)}*{mono}")
    if not parts:
        return "0"
    out = parts[0]
    for part in parts[1:]:
        out += part if part.startswith("-") else f"+{part}"
    return out


class PolynomialRing:
    """R[var] for R a finite field, a rational function field or another polynomial ring."""

    is_field = False

    def __init__(self, base, var: str = "t"):
        self.base = base
        self.var = var

    def __repr__(self) -> str:
        return f"{self.base!r}[{self.var}]"

    def __eq__(self, other) -> bool:
        return isinstance(other, PolynomialRing) and other.base == self.base and other.var == self.var

    def __hash__(self) -> int:
        return hash(("PolyRing", self.base, self.var))

    @property
    def characteristic(self) -> int:
        return self.base.characteristic

    @property
    def zero(self) -> "Poly":
        return Poly(self, ())

    @property
    def one(self) -> "Poly":
        return Poly(self, (self.base.one,))

    @property
    def gen(self) -> "Poly":
        return Poly(self, (self.base.zero, self.base.one))

    def __call__(self, value) -> "Poly":
        return self.coerce(value)

    def coerce(self, value) -> "Poly":
        if isinstance(value, Poly) and value.ring == self:
            return value
        return Poly(self, (self.base.coerce(value),))

    def try_coerce(self, value) -> Optional["Poly"]:
        try:
            return self.coerce(value)
        except TypeError:
            return None

    def from_coeffs(self, coeffs: Sequence) -> "Poly":
        """Coefficients lowest degree first; each is coerced into the base ring."""
        return Poly(self, tuple(self.base.coerce(c) for c in coeffs))


class Poly:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: PolynomialRing, coeffs: Sequence):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.ring = ring
        self.coeffs: Tuple = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        if not self.coeffs:
            return self.ring.base.zero
        return self.coeffs[-1]

    def coeff(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.base.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0].is_one()

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1].is_one()

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def _lift(self, other) -> Optional["Poly"]:
        if isinstance(other, Poly) and other.ring == self.ring:
            return other
        return self.ring.try_coerce(other)

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return self.ring.zero
        zero = self.ring.base.zero
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x.is_zero():
                continue
            for j, y in enumerate(other.coeffs):
                if y.is_zero():
                    continue
                out[i + j] = out[i + j] + x * y
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        return Poly(self.ring, [x * c for x in self.coeffs])

    def shift(self, k: int) -> "Poly":
        """Multiply by var^k."""
        if not self.coeffs:
            return self
        return Poly(self.ring, (self.ring.base.zero,) * k + self.coeffs)

    def __pow__(self, e: int):
        if e < 0:
            raise ArithmeticDomainError("negative power of a polynomial")
        result = self.ring.one
        base = self
        while e > 0:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ArithmeticDomainError("polynomial division by zero")
        inv = other.lc.inverse()
        rem = list(self.coeffs)
        dg = other.degree
        if len(rem) - 1 < dg:
            return self.ring.zero, self
        zero = self.ring.base.zero
        quot = [zero] * (len(rem) - dg)
        for k in range(len(rem) - 1, dg - 1, -1):
            c = rem[k]
            if c.is_zero():
                continue
            c = c * inv
            quot[k - dg] = c
            for i, g in enumerate(other.coeffs):
                rem[k - dg + i] = rem[k - dg + i] - c * g
        return Poly(self.ring, quot), Poly(self.ring, rem[:dg])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticDomainError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "Poly") -> bool:
        return (other % self).is_zero()

    def inverse(self) -> "Poly":
        if self.degree != 0:
            raise ArithmeticDomainError(f"{self} is not a unit")
        return Poly(self.ring, (self.coeffs[0].inverse(),))

    def monic(self) -> "Poly":
        if self.is_zero() or self.lc.is_one():
            return self
        return self.scale(self.lc.inverse())

    def derivative(self) -> "Poly":
        return Poly(self.ring, [c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, value):
        """Horner evaluation; a Poly argument gives the composition."""
        if not self.coeffs:
            return self.ring.base.zero
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * value + c
        return acc

    def powmod(self, e: int, modulus: "Poly") -> "Poly":
        result = self.ring.one
        base = self % modulus
        while e > 0:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other: "Poly") -> Tuple["Poly", "Poly", "Poly"]:
        """Return (g, u, v) with u*self + v*other = g, g monic."""
        r0, r1 = self, other
        s0, s1 = self.ring.one, self.ring.zero
        t0, t1 = self.ring.zero, self.ring.one
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        inv = r0.lc.inverse()
        return r0.scale(inv), s0.scale(inv), t0.scale(inv)

    def sort_key(self) -> Tuple:
        return (self.degree,) + tuple(c.index() for c in reversed(self.coeffs))

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return other.ring == self.ring and self.coeffs == other.coeffs
        other = self.ring.try_coerce(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __str__(self) -> str:
        terms = [(i, str(c)) for i, c in reversed(list(enumerate(self.coeffs))) if not c.is_zero()]
        return format_terms(terms, self.ring.var)

    def __repr__(self) -> str:
        return f"Poly({self})"


class RationalFunctionField:
    """F_q(var) with elements kept as reduced fractions num/den, den monic."""

    is_field = True

    def __init__(self, base: FiniteField, var: str = "t"):
        self.base = base
        self.var = var
        self.poly_ring = PolynomialRing(base, var)

    def __repr__(self) -> str:
        return f"{self.base!r}({self.var})"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalFunctionField) and other.base == self.base and other.var == self.var

    def __hash__(self) -> int:
        return hash(("RatFnField", self.base, self.var))

    @property
    def characteristic(self) -> int:
        return self.base.p

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def zero(self) -> "RatFn":
        return RatFn(self, self.poly_ring.zero, self.poly_ring.one, reduce=False)

    @property
    def one(self) -> "RatFn":
        return RatFn(self, self.poly_ring.one, self.poly_ring.one, reduce=False)

    @property
    def gen(self) -> "RatFn":
        return RatFn(self, self.poly_ring.gen, self.poly_ring.one, reduce=False)

    def __call__(self, value) -> "RatFn":
        return self.coerce(value)

    def coerce(self, value) -> "RatFn":
        if isinstance(value, RatFn) and value.field == self:
            return value
        if isinstance(value, Poly):
            if value.ring == self.poly_ring:
                return RatFn(self, value, self.poly_ring.one, reduce=False)
            raise TypeError(f"cannot coerce {value} into {self}")
        return RatFn(self, self.poly_ring.coerce(value), self.poly_ring.one, reduce=False)

    def try_coerce(self, value) -> Optional["RatFn"]:
        try:
            return self.coerce(value)
        except TypeError:
            return None


class RatFn:
    __slots__ = ("field", "num", "den")

    def __init__(self, field: RationalFunctionField, num: Poly, den: Poly, reduce: bool = True):
        if den.is_zero():
            raise ArithmeticDomainError("rational function with zero denominator")
        if reduce:
            if num.is_zero():
                den = field.poly_ring.one
            elif not den.is_one():
                g = num.gcd(den)
                if not g.is_one():
                    num = num.exact_div(g)
                    den = den.exact_div(g)
                if not den.lc.is_one():
                    inv = den.lc.inverse()
                    num, den = num.scale(inv), den.scale(inv)
        self.field = field
        self.num = num
        self.den = den

    def _lift(self, other) -> Optional["RatFn"]:
        if isinstance(other, RatFn) and other.field == self.field:
            return other
        return self.field.try_coerce(other)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.is_one()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RatFn(self.field, self.num + other.num, self.den, reduce=False)
        if self.den == other.den:
            return RatFn(self.field, self.num + other.num, self.den)
        return RatFn(self.field, self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(self.field, -self.num, self.den, reduce=False)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RatFn(self.field, self.num * other.num, self.den, reduce=False)
        if self.is_zero() or other.is_zero():
            return self.field.zero
        # cross cancellation keeps the result reduced with a monic denominator
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        num = self.num.exact_div(g1) * other.num.exact_div(g2)
        den = self.den.exact_div(g2) * other.den.exact_div(g1)
        return RatFn(self.field, num, den, reduce=False)

    __rmul__ = __mul__

    def inverse(self) -> "RatFn":
        if self.is_zero():
            raise ArithmeticDomainError("division by zero rational function")
        inv = self.num.lc.inverse()
        return RatFn(self.field, self.den.scale(inv), self.num.scale(inv), reduce=False)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RatFn(self.field, self.num ** e, self.den ** e, reduce=False)

    def evaluate(self, value) -> FieldElem:
        d = self.den(value)
        if d.is_zero():
            raise ArithmeticDomainError(f"{self} has a pole at {value}")
        return self.num(value) / d

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        return f"{wrap_compound(str(self.num))}/{wrap_compound(str(self.den))}"

    def __repr__(self) -> str:
        return f"RatFn({self})"


class PlaceKind(str, Enum):
    FINITE = "finite"
    INFINITY = "infinity"


@dataclass(frozen=True)
class Place:
    kind: PlaceKind
    pi: Optional[Poly]
    degree: int
    residue_field: FiniteField

    @property
    def is_infinite(self) -> bool:
        return self.kind == PlaceKind.INFINITY

    @property
    def residue_order(self) -> int:
        return self.residue_field.order

    @property
    def label(self) -> str:
        return "inf" if self.is_infinite else str(self.pi)

    def sort_key(self) -> Tuple:
        if self.is_infinite:
            return (1, 1)
        return (0,) + self.pi.sort_key()

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class LocalLeading:
    place: Place
    valuation: int
    leading: FieldElem
