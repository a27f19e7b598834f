from dataclasses import dataclass
from typing import Any, Optional

from ..curve.models import Curve
from ..funcfield.models import Poly


class Point:
    """Affine point (x, y) on a Weierstrass curve, or the identity when x is None."""

    __slots__ = ("curve", "x", "y")

    def __init__(self, curve: Curve, x: Any = None, y: Any = None):
        self.curve = curve
        if x is None:
            self.x = self.y = None
        else:
            self.x = curve.field.coerce(x)
            self.y = curve.field.coerce(y)

    @classmethod
    def identity(cls, curve: Curve) -> "Point":
        return cls(curve)

    @property
    def is_identity(self) -> bool:
        return self.x is None

    def is_on_curve(self) -> bool:
        return self.is_identity or self.curve.contains(self.x, self.y)

    def __neg__(self) -> "Point":
        if self.is_identity:
            return self
        a1, _, a3, _, _ = self.curve.a
        return Point(self.curve, self.x, -self.y - a1 * self.x - a3)

    def __add__(self, other: "Point") -> "Point":
        if self.is_identity:
            return other
        if other.is_identity:
            return self
        a1, a2, a3, a4, a6 = self.curve.a
        x1, y1, x2, y2 = self.x, self.y, other.x, other.y
        if x1 == x2:
            if (y1 + y2 + a1 * x2 + a3).is_zero():
                return Point.identity(self.curve)
            den = 2 * y1 + a1 * x1 + a3
            lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / den
            nu = (-x1 * x1 * x1 + a4 * x1 + 2 * a6 - a3 * y1) / den
        else:
            dx = x2 - x1
            lam = (y2 - y1) / dx
            nu = (y1 * x2 - y2 * x1) / dx
        x3 = lam * lam + a1 * lam - a2 - x1 - x2
        y3 = -(lam + a1) * x3 - nu - a3
        return Point(self.curve, x3, y3)

    def __sub__(self, other: "Point") -> "Point":
        return self + (-other)

    def __mul__(self, k: int) -> "Point":
        if k < 0:
            return (-self) * (-k)
        result = Point.identity(self.curve)
        addend = self
        while k > 0:
            if k & 1:
                result = result + addend
            addend = addend + addend
            k >>= 1
        return result

    __rmul__ = __mul__

    def order(self, bound: int) -> Optional[int]:
        """Smallest n <= bound with n*P = O."""
        q = self
        for n in range(1, bound + 1):
            if q.is_identity:
                return n
            q = q + self
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Point):
            return False
        if self.is_identity or other.is_identity:
            return self.is_identity and other.is_identity
        return self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        return hash((self.x, self.y))

    def __str__(self) -> str:
        if self.is_identity:
            return "O"
        return f"({self.x}, {self.y})"

    def __repr__(self) -> str:
        return f"Point{self}"


@dataclass(frozen=True)
class DivisionPoly:
    l: int
    psi: Poly
    curve: Curve


@dataclass(frozen=True)
class IsogenyData:
    kernel_poly: Poly
    domain: Curve
    codomain: Curve
    degree: int
    origin: str = "search"
