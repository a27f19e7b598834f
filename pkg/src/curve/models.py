from dataclasses import dataclass
from functools import cached_property
from typing import Any, Optional, Sequence, Tuple

from ..exceptions import SingularCurveError
from ..funcfield.models import Place, wrap_compound


@dataclass(frozen=True)
class Invariants:
    b2: Any
    b4: Any
    b6: Any
    b8: Any
    c4: Any
    c6: Any
    disc: Any
    j: Any


class Curve:
    """
    Long Weierstrass equation y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
    over a finite field or over F_q(t).
    """

    def __init__(self, field, a: Sequence, check: bool = True):
        if len(a) != 5:
            raise ValueError("a Weierstrass equation needs exactly five coefficients")
        self.field = field
        self.a: Tuple = tuple(field.coerce(c) for c in a)
        if check and self.invariants.disc.is_zero():
            raise SingularCurveError(f"curve {self} is singular (discriminant 0)")

    @property
    def a1(self):
        return self.a[0]

    @property
    def a2(self):
        return self.a[1]

    @property
    def a3(self):
        return self.a[2]

    @property
    def a4(self):
        return self.a[3]

    @property
    def a6(self):
        return self.a[4]

    @cached_property
    def invariants(self) -> Invariants:
        a1, a2, a3, a4, a6 = self.a
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        c4 = b2 * b2 - 24 * b4
        c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6
        disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        j = c4 * c4 * c4 / disc if not disc.is_zero() else None
        return Invariants(b2, b4, b6, b8, c4, c6, disc, j)

    @property
    def is_short(self) -> bool:
        return self.a1.is_zero() and self.a3.is_zero()

    def contains(self, x, y) -> bool:
        a1, a2, a3, a4, a6 = self.a
        return (y * y + a1 * x * y + a3 * y - (x * x * x + a2 * x * x + a4 * x + a6)).is_zero()

    def __eq__(self, other) -> bool:
        return isinstance(other, Curve) and other.field == self.field and other.a == self.a

    def __hash__(self) -> int:
        return hash((self.field, self.a))

    def __str__(self) -> str:
        a1, a2, a3, a4, a6 = self.a

        def term(c, mono: str) -> str:
            if c.is_zero():
                return ""
            cs = str(c)
            if not mono:
                return cs
            if cs == "1":
                return mono
            if cs == "-1":
                return f"-{mono}"
            return f"{wrap_compound(cs)}*{mono}"

        def join(parts) -> str:
            parts = [p for p in parts if p]
            out = parts[0] if parts else "0"
            for part in parts[1:]:
                out += part if part.startswith("-") else f"+{part}"
            return out

        lhs = join(["y^2", term(a1, "x*y"), term(a3, "y")])
        rhs = join(["x^3", term(a2, "x^2"), term(a4, "x"), term(a6, "")])
        return f"{lhs} = {rhs}"

    def __repr__(self) -> str:
        return f"Curve({self})"


@dataclass(frozen=True)
class Transform:
    """x = u^2 x' + r, y = u^3 y' + u^2 s x' + t."""

    u: Any
    r: Any
    s: Any
    t: Any

    @classmethod
    def identity(cls, field) -> "Transform":
        return cls(field.one, field.zero, field.zero, field.zero)

    def compose(self, other: "Transform") -> "Transform":
        """self applied first, then other."""
        u1, r1, s1, t1 = self.u, self.r, self.s, self.t
        u2, r2, s2, t2 = other.u, other.r, other.s, other.t
        return Transform(
            u1 * u2,
            r1 + u1 * u1 * r2,
            s1 + u1 * s2,
            t1 + u1 * u1 * s1 * r2 + u1 * u1 * u1 * t2,
        )

    def inverse(self) -> "Transform":
        u, r, s, t = self.u, self.r, self.s, self.t
        ui = u.inverse()
        return Transform(ui, -r * ui * ui, -s * ui, (r * s - t) * ui * ui * ui)

    def point_to_original(self, x, y) -> Tuple[Any, Any]:
        u2 = self.u * self.u
        return u2 * x + self.r, u2 * self.u * y + u2 * self.s * x + self.t

    def is_identity(self) -> bool:
        return self.u.is_one() and self.r.is_zero() and self.s.is_zero() and self.t.is_zero()


@dataclass(frozen=True)
class LocalModel:
    place: Place
    model: Curve
    transform: Transform
    vdisc: int
    vc4: Optional[int]  # None when c4 = 0
    vj: Optional[int]  # None when j = 0

    @property
    def is_minimal(self) -> bool:
        return self.vdisc < 12 or (self.vc4 is not None and self.vc4 < 4)
