"""
Curve documents, kernel polynomials and place arguments.

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' uint)?
    base   := uint | var | 'g' | '(' expr ')' | '-' factor

Integers reduce mod p; 'g' names the generator of F_{p^n} when n > 1.
Parse actions evaluate straight into field or polynomial ring elements.
"""
from typing import Callable, Dict, List, Optional, Tuple
import logging

from pydantic import ValidationError
from pyparsing import (
    Forward,
    Literal,
    Opt,
    ParseBaseException,
    Regex,
    StringEnd,
    Suppress,
    Word,
    ZeroOrMore,
    alphas,
    col,
    lineno,
    nums,
)

from ..curve.models import Curve
from ..exceptions import (
    ArithmeticDomainError,
    InvalidKernelError,
    InvalidPlaceError,
    NotPrimeError,
    ParseError,
    VChowError,
)
from ..funcfield.models import Place, Poly, PolynomialRing, RatFn, RationalFunctionField
from ..funcfield.service import FunctionFieldService, polynomial_ring, rational_function_field
from ..gf.models import FiniteField
from ..gf.service import FiniteFieldService, is_prime, prime_field
from .schemas import CurveDocument

logger = logging.getLogger(__name__)


class ExpressionGrammar:
    """Evaluating expression parser over `domain` with the given variable symbols."""

    def __init__(self, domain, symbols: Dict[str, object], divide: Optional[Callable] = None):
        self.domain = domain
        self.symbols = symbols
        self.divide = divide or (lambda a, b: a / b)

        integer = Word(nums).set_parse_action(lambda toks: self.domain.coerce(int(toks[0])))
        uint = Word(nums).set_parse_action(lambda toks: int(toks[0]))
        names = sorted(symbols, key=len, reverse=True)
        symbol = Regex("|".join(names)).set_parse_action(lambda toks: self.symbols[toks[0]])
        lpar, rpar = Suppress("("), Suppress(")")

        expr = Forward()
        factor = Forward()
        negated = (Suppress("-") + factor).set_parse_action(lambda toks: -toks[0])
        base = integer | symbol | (lpar + expr + rpar) | negated
        factor <<= (base + Opt(Suppress("^") + uint)).set_parse_action(self._power)
        term = (factor + ZeroOrMore((Literal("*") | Literal("/")) + factor)).set_parse_action(self._fold_mul)
        expr <<= (term + ZeroOrMore((Literal("+") | Literal("-")) + term)).set_parse_action(self._fold_add)
        self.expr = expr
        self.bnf = expr + StringEnd()

    def _fold_mul(self, toks):
        acc = toks[0]
        for i in range(1, len(toks), 2):
            if toks[i] == "*":
                acc = acc * toks[i + 1]
            else:
                acc = self.divide(acc, toks[i + 1])
        return acc

    @staticmethod
    def _power(toks):
        return toks[0] ** toks[1] if len(toks) > 1 else toks[0]

    @staticmethod
    def _fold_add(toks):
        acc = toks[0]
        for i in range(1, len(toks), 2):
            acc = acc + toks[i + 1] if toks[i] == "+" else acc - toks[i + 1]
        return acc

    def parse(self, text: str, offset: int = 0, document: Optional[str] = None):
        try:
            return self.bnf.parse_string(text, parse_all=True)[0]
        except ParseBaseException as exc:
            source = document if document is not None else text
            loc = offset + exc.loc
            raise ParseError(f"invalid expression {text.strip()!r}: {exc.msg}", lineno(loc, source), col(loc, source))
        except (ArithmeticDomainError, ZeroDivisionError) as exc:
            source = document if document is not None else text
            raise ParseError(f"invalid expression {text.strip()!r}: {exc}", lineno(offset, source), col(offset, source))


def _constant_symbols(base: FiniteField) -> Dict[str, object]:
    if getattr(base, "degree", 1) > 1:
        return {"g": base.gen}
    return {}


def field_grammar(field: RationalFunctionField) -> ExpressionGrammar:
    symbols = {field.var: field.gen}
    for name, value in _constant_symbols(field.base).items():
        symbols[name] = field.coerce(value)
    return ExpressionGrammar(field, symbols)


def kernel_grammar(field: RationalFunctionField) -> ExpressionGrammar:
    ring: PolynomialRing = polynomial_ring(field, "x")

    def divide(a: Poly, b: Poly) -> Poly:
        if not b.is_constant() or b.is_zero():
            raise ArithmeticDomainError(f"kernel polynomial divides by non-constant {b}")
        return a * ring.coerce(b.coeff(0).inverse())

    symbols = {"x": ring.gen, field.var: ring.coerce(field.gen)}
    for name, value in _constant_symbols(field.base).items():
        symbols[name] = ring.coerce(field.coerce(value))
    return ExpressionGrammar(ring, symbols, divide)


def _statement_grammar():
    key = Word(alphas + "_", alphas + nums + "_")
    bracketed = Regex(r"\[[^\]]*\]")
    plain = Regex(r"[^;\n#\[]+")
    value = (bracketed | plain).set_parse_action(lambda s, loc, toks: (toks[0], loc))
    comment = Regex(r"#[^\n]*")
    separator = Suppress(";")
    statement = (key + Suppress("=") + value).set_parse_action(lambda toks: (toks[0], toks[1]))
    document = (
        ZeroOrMore(separator)
        + ZeroOrMore(statement + ZeroOrMore(separator))
        + StringEnd()
    )
    document.ignore(comment)
    return document


_KEYS = ("p", "n", "modulus", "a")


class DocumentParser:

    def __init__(self, text: str):
        self.text = text
        self.values: Dict[str, Tuple[str, int]] = {}

    def _error(self, message: str, loc: int) -> ParseError:
        return ParseError(message, lineno(loc, self.text), col(loc, self.text))

    def _statements(self) -> None:
        try:
            tokens = _statement_grammar().parse_string(self.text, parse_all=True)
        except ParseBaseException as exc:
            raise self._error(f"malformed curve document: {exc.msg}", exc.loc)
        for key, (value, loc) in tokens:
            if key not in _KEYS:
                raise self._error(f"unknown key {key!r}", loc)
            if key in self.values:
                raise self._error(f"duplicate key {key!r}", loc)
            self.values[key] = (value, loc)
        for key in ("p", "a"):
            if key not in self.values:
                raise ParseError(f"missing key {key!r}")

    def _uint(self, key: str, default: Optional[int] = None) -> Optional[int]:
        if key not in self.values:
            return default
        value, loc = self.values[key]
        if not value.strip().isdigit():
            raise self._error(f"{key} must be a non-negative integer, got {value.strip()!r}", loc)
        return int(value)

    def _modulus(self, p: int) -> Optional[List[int]]:
        if "modulus" not in self.values:
            return None
        value, loc = self.values["modulus"]
        ring = polynomial_ring(prime_field(p), "g")
        poly = ExpressionGrammar(ring, {"g": ring.gen}).parse(value, loc, self.text)
        return [c.to_int() for c in poly.coeffs]

    def _entries(self) -> List[Tuple[str, int]]:
        value, loc = self.values["a"]
        stripped = value.strip()
        if not (stripped.startswith("[") and stripped.endswith("]")):
            raise self._error("a must be a bracketed list [a1, a2, a3, a4, a6]", loc)
        start = loc + value.index("[") + 1
        entries, pos = [], start
        for part in value[value.index("[") + 1:value.rindex("]")].split(","):
            entries.append((part, pos))
            pos += len(part) + 1
        if len(entries) != 5:
            raise self._error(f"a must have 5 entries, got {len(entries)}", loc)
        return entries

    def parse_document(self) -> CurveDocument:
        self._statements()
        p = self._uint("p")
        if not is_prime(p):
            raise NotPrimeError(f"characteristic {p} is not prime")
        try:
            return CurveDocument(
                p=p,
                n=self._uint("n", 1),
                modulus=self._modulus(p),
                a=[part.strip() for part, _ in self._entries()],
            )
        except ValidationError as exc:
            raise ParseError(f"invalid curve document: {exc.errors()[0]['msg']}") from exc

    def parse_curve(self) -> Tuple[CurveDocument, Curve]:
        document = self.parse_document()
        field = document_field(document)
        grammar = field_grammar(field)
        coeffs = [grammar.parse(part, pos, self.text) for part, pos in self._entries()]
        curve = Curve(field, coeffs)
        logger.info(f"Parsed {curve} over {field}")
        return document, curve


def document_field(document: CurveDocument) -> RationalFunctionField:
    base = FiniteFieldService.get_field(document.p, document.n, document.modulus)
    return rational_function_field(base, "t")


def parse_curve(text: str) -> Curve:
    return DocumentParser(text).parse_curve()[1]


def parse_expression(field: RationalFunctionField, text: str) -> RatFn:
    return field_grammar(field).parse(text)


def parse_kernel(field: RationalFunctionField, text: str) -> Poly:
    kernel = kernel_grammar(field).parse(text)
    if kernel.is_zero():
        raise InvalidKernelError("kernel polynomial is zero")
    return kernel.monic()


def parse_place(field: RationalFunctionField, text: str) -> Place:
    if text.strip() == "inf":
        return FunctionFieldService.infinite_place(field)
    try:
        value = parse_expression(field, text)
    except VChowError as exc:
        raise InvalidPlaceError(f"cannot parse place {text!r}: {exc.message}") from exc
    if not value.is_polynomial() or value.num.degree < 1 or not value.num.is_monic():
        raise InvalidPlaceError(f"place {text!r} is not a monic polynomial of positive degree")
    if not FunctionFieldService.is_irreducible(value.num):
        raise InvalidPlaceError(f"place {text!r} is not irreducible")
    return FunctionFieldService.finite_place(value.num)
