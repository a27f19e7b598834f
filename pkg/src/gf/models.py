from typing import Iterator, Optional, Tuple

from ..exceptions import ArithmeticDomainError


class FiniteField:
    """
    Common descriptor for F_p and its extensions.

    Elements are stored as raw values (ints for F_p, tuples of base raws for
    extensions) wrapped in FieldElem. Subclasses implement the raw operations.
    """

    p: int
    n: int
    order: int
    is_field = True

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, self._zero_raw())

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, self._from_int(1))

    def __call__(self, value) -> "FieldElem":
        return self.coerce(value)

    def coerce(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.field == self:
                return value
            raw = self._embed(value)
            if raw is None:
                raise TypeError(f"cannot coerce element of {value.field} into {self}")
            return FieldElem(self, raw)
        if isinstance(value, int):
            return FieldElem(self, self._from_int(value))
        raise TypeError(f"cannot coerce {type(value).__name__} into {self}")

    def try_coerce(self, value) -> Optional["FieldElem"]:
        try:
            return self.coerce(value)
        except TypeError:
            return None

    def element(self, index: int) -> "FieldElem":
        """Element number `index` in the fixed enumeration order (0 first)."""
        return FieldElem(self, self._from_index(index))

    def elements(self) -> Iterator["FieldElem"]:
        for i in range(self.order):
            yield FieldElem(self, self._from_index(i))

    def contains(self, other: "FiniteField") -> bool:
        return other == self

    # raw interface
    def _zero_raw(self):
        raise NotImplementedError

    def _from_int(self, k: int):
        raise NotImplementedError

    def _from_index(self, i: int):
        raise NotImplementedError

    def _to_index(self, raw) -> int:
        raise NotImplementedError

    def _embed(self, elem: "FieldElem"):
        return None

    def _add(self, a, b):
        raise NotImplementedError

    def _sub(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _is_zero(self, a) -> bool:
        raise NotImplementedError

    def _inv(self, a):
        if self._is_zero(a):
            raise ArithmeticDomainError("division by zero in finite field")
        return self._pow(a, self.order - 2)

    def _pow(self, a, e: int):
        result = self._from_int(1)
        base = a
        while e > 0:
            if e & 1:
                result = self._mul(result, base)
            base = self._mul(base, base)
            e >>= 1
        return result

    def _format(self, raw) -> str:
        raise NotImplementedError


class PrimeField(FiniteField):
    def __init__(self, p: int):
        self.p = p
        self.n = 1
        self.order = p
        self.modulus: Tuple[int, ...] = (0, 1)

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    def _zero_raw(self):
        return 0

    def _from_int(self, k: int):
        return k % self.p

    def _from_index(self, i: int):
        return i

    def _to_index(self, raw) -> int:
        return raw

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _neg(self, a):
        return (-a) % self.p

    def _mul(self, a, b):
        return (a * b) % self.p

    def _is_zero(self, a) -> bool:
        return a == 0

    def _inv(self, a):
        if a == 0:
            raise ArithmeticDomainError("division by zero in finite field")
        return pow(a, self.p - 2, self.p)

    def _pow(self, a, e: int):
        return pow(a, e, self.p)

    def _format(self, raw) -> str:
        # symmetric representative
        return str(raw - self.p) if raw > self.p // 2 else str(raw)


class ExtensionField(FiniteField):
    """
    base[g]/(modulus) for a monic irreducible modulus of degree >= 2.

    `modulus` holds base raws, lowest degree first, with a trailing 1.
    """

    def __init__(self, base: FiniteField, modulus: Tuple, name: str = "g"):
        self.base = base
        self.modulus = tuple(modulus)
        self.degree = len(self.modulus) - 1
        self.name = name
        self.p = base.p
        self.n = base.n * self.degree
        self.order = base.order ** self.degree

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.n}; {self.name})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExtensionField)
            and other.base == self.base
            and other.modulus == self.modulus
        )

    def __hash__(self) -> int:
        return hash(("GFext", self.base, self.modulus))

    def contains(self, other: FiniteField) -> bool:
        return other == self or self.base.contains(other)

    @property
    def gen(self) -> "FieldElem":
        raw = [self.base._zero_raw()] * self.degree
        raw[1] = self.base._from_int(1)
        return FieldElem(self, tuple(raw))

    def _zero_raw(self):
        return (self.base._zero_raw(),) * self.degree

    def _from_int(self, k: int):
        return self._from_base(self.base._from_int(k))

    def _from_base(self, braw):
        return (braw,) + (self.base._zero_raw(),) * (self.degree - 1)

    def _embed(self, elem: "FieldElem"):
        if elem.field == self.base:
            return self._from_base(elem.value)
        inner = self.base._embed(elem)
        if inner is None:
            return None
        return self._from_base(inner)

    def _from_index(self, i: int):
        digits = []
        for _ in range(self.degree):
            i, d = divmod(i, self.base.order)
            digits.append(self.base._from_index(d))
        return tuple(digits)

    def _to_index(self, raw) -> int:
        index = 0
        for c in reversed(raw):
            index = index * self.base.order + self.base._to_index(c)
        return index

    def _add(self, a, b):
        add = self.base._add
        return tuple(add(x, y) for x, y in zip(a, b))

    def _sub(self, a, b):
        sub = self.base._sub
        return tuple(sub(x, y) for x, y in zip(a, b))

    def _neg(self, a):
        neg = self.base._neg
        return tuple(neg(x) for x in a)

    def _is_zero(self, a) -> bool:
        return all(self.base._is_zero(c) for c in a)

    def _mul(self, a, b):
        base = self.base
        d = self.degree
        prod = [base._zero_raw()] * (2 * d - 1)
        for i, x in enumerate(a):
            if base._is_zero(x):
                continue
            for j, y in enumerate(b):
                if base._is_zero(y):
                    continue
                prod[i + j] = base._add(prod[i + j], base._mul(x, y))
        # reduce by the monic modulus
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if base._is_zero(c):
                continue
            for i in range(d):
                prod[k - d + i] = base._sub(prod[k - d + i], base._mul(c, self.modulus[i]))
        return tuple(prod[:d])

    def _format(self, raw) -> str:
        terms = []
        for i in range(self.degree - 1, -1, -1):
            c = raw[i]
            if self.base._is_zero(c):
                continue
            cs = self.base._format(c)
            if any(ch in cs[1:] for ch in "+-") or (isinstance(self.base, ExtensionField) and i > 0):
                cs = f"({cs})"
            if i == 0:
                terms.append(cs)
                continue
            mono = self.name if i == 1 else f"{self.name}^{i}"
            if cs == "1":
                terms.append(mono)
            elif cs == "-1":
                terms.append(f"-{mono}")
            else:
                terms.append(f"{cs}*{mono}")
        if not terms:
            return "0"
        out = terms[0]
        for term in terms[1:]:
            out += term if term.startswith("-") else f"+{term}"
        return out


class FieldElem:
    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value):
        self.field = field
        self.value = value

    def _pair(self, other):
        if isinstance(other, FieldElem):
            if other.field == self.field:
                return self.field, self.value, other.value
            if self.field.contains(other.field):
                return self.field, self.value, self.field.coerce(other).value
            if other.field.contains(self.field):
                return other.field, other.field.coerce(self).value, other.value
            return None
        if isinstance(other, int):
            return self.field, self.value, self.field._from_int(other)
        return None

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        field, a, b = pair
        return FieldElem(field, field._add(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        field, a, b = pair
        return FieldElem(field, field._sub(a, b))

    def __rsub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        field, a, b = pair
        return FieldElem(field, field._sub(b, a))

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        field, a, b = pair
        return FieldElem(field, field._mul(a, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        field, a, b = pair
        return FieldElem(field, field._mul(a, field._inv(b)))

    def __rtruediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        field, a, b = pair
        return FieldElem(field, field._mul(b, field._inv(a)))

    def __neg__(self):
        return FieldElem(self.field, self.field._neg(self.value))

    def __pow__(self, e: int):
        if e < 0:
            return FieldElem(self.field, self.field._pow(self.field._inv(self.value), -e))
        return FieldElem(self.field, self.field._pow(self.value, e))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.field, self.field._inv(self.value))

    def is_zero(self) -> bool:
        return self.field._is_zero(self.value)

    def is_one(self) -> bool:
        return self.value == self.field._from_int(1)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        _, a, b = pair
        return a == b

    def __hash__(self) -> int:
        return hash(self.value)

    def index(self) -> int:
        return self.field._to_index(self.value)

    def to_int(self) -> int:
        """Symmetric integer representative; only meaningful for F_p elements."""
        if self.field.n != 1:
            raise ArithmeticDomainError(f"{self} is not a prime-field element")
        return int(self.field._format(self.value))

    def __str__(self) -> str:
        return self.field._format(self.value)

    def __repr__(self) -> str:
        return f"FieldElem({self}, {self.field!r})"
