import pytest

from src.exceptions import ArithmeticDomainError, InvalidPlaceError
from src.funcfield.models import RatFn
from conftest import function_field
from src.funcfield.service import FunctionFieldService, _poly_from_index, field_roots, polynomial_ring


def test_polynomial_division(f5):
    ring = f5.poly_ring
    t = ring.gen
    q, r = divmod(t ** 3 + 1, t + 1)
    assert q == t * t - t + 1
    assert r.is_zero()
    q, r = divmod(t ** 3 + 2, t + 1)
    assert r == ring(1)
    assert (t ** 2 - 1).gcd(t ** 2 + 2 * t + 1) == t + 1


def test_xgcd_bezout(f7):
    ring = f7.poly_ring
    t = ring.gen
    a, b = t ** 3 + 2 * t + 1, t ** 2 + 3
    g, u, v = a.xgcd(b)
    assert g.is_one()
    assert u * a + v * b == g


def test_factor_discriminant_of_legendre(f5):
    t = f5.poly_ring.gen
    f = t ** 4 * (t + 1) ** 2 * (t - 1) ** 2
    assert FunctionFieldService.factor(f) == [(t, 4), (t + 1, 2), (t - 1, 2)]
    assert FunctionFieldService.format_factored(f5(f)) == "t^4·(t+1)^2·(t-1)^2"


def test_factor_handles_pth_powers(f5):
    t = f5.poly_ring.gen
    f = (t + 2) ** 5 * (t ** 2 + 2) * 3
    assert set(FunctionFieldService.factor(f)) == {(t + 2, 5), (t ** 2 + 2, 1)}


def test_factor_recovers_product(f7, rng):
    ring = f7.poly_ring
    for _ in range(10):
        f = ring.from_coeffs([rng.randrange(7) for _ in range(7)] + [1])
        product = ring.one
        for g, m in FunctionFieldService.factor(f):
            assert FunctionFieldService.is_irreducible(g)
            product = product * g ** m
        assert product == f.monic()


def test_irreducibility(f5):
    t = f5.poly_ring.gen
    assert FunctionFieldService.is_irreducible(t ** 2 + 2)
    assert not FunctionFieldService.is_irreducible(t ** 2 + 1)
    assert not FunctionFieldService.is_irreducible(f5.poly_ring(3))


def test_places_of_degree(f5):
    assert len(FunctionFieldService.places_of_degree(f5, 1)) == 5
    places = FunctionFieldService.places_of_degree(f5, 2)
    assert len(places) == 10
    assert all(v.residue_order == 25 for v in places)


def test_finite_place_requires_irreducible(f5):
    t = f5.poly_ring.gen
    with pytest.raises(InvalidPlaceError):
        FunctionFieldService.finite_place(t ** 2 + 1)


def test_valuations_and_leading_terms(f5):
    t = f5.gen
    x = t ** 3 / (t + 1)
    at_t = FunctionFieldService.finite_place(f5.poly_ring.gen)
    at_t1 = FunctionFieldService.finite_place(f5.poly_ring.gen + 1)
    inf = FunctionFieldService.infinite_place(f5)
    assert FunctionFieldService.valuation(x, at_t) == 3
    assert FunctionFieldService.valuation(x, at_t1) == -1
    assert FunctionFieldService.valuation(x, inf) == -2
    assert FunctionFieldService.leading_at(x, at_t).leading == 1
    assert FunctionFieldService.leading_at(3 * x, inf).leading == 3
    at_t2 = FunctionFieldService.finite_place(f5.poly_ring.gen - 2)
    assert FunctionFieldService.reduce_at(x, at_t2) == 1
    with pytest.raises(ArithmeticDomainError):
        FunctionFieldService.reduce_at(x, at_t1)
    with pytest.raises(ArithmeticDomainError):
        FunctionFieldService.valuation(f5.zero, at_t)


def test_reduction_at_degree_two_place(f5):
    t = f5.gen
    place = FunctionFieldService.finite_place(f5.poly_ring.gen ** 2 + 2)
    w = FunctionFieldService.reduce_at(t, place)
    assert w.field.order == 25
    assert w * w == place.residue_field(-2)


def test_invert_variable(f5):
    t = f5.gen
    x = (t ** 2 + 1) / t
    y = FunctionFieldService.invert_variable(x)
    s = y.field.gen
    assert y == (1 + s ** 2) / s


def test_canonical_form(f5):
    t = f5.gen
    ring = f5.poly_ring
    x = RatFn(f5, ring.from_coeffs([2, 2]), ring.from_coeffs([0, 2]))
    assert x == (t + 1) / t
    assert x.den.is_monic()
    assert (t / t).is_one()
    assert str((t + 1) / (t - 1)) == "(t+1)/(t-1)"
    with pytest.raises(ArithmeticDomainError):
        ((t + 1) / t).evaluate(f5.base.zero)


def test_rational_roots(f5):
    t = f5.gen
    ring = polynomial_ring(f5, "X")
    X = ring.gen
    roots = [t, t.inverse(), (t + 1) ** 2 / (t - 1)]
    f = ring.one
    for r in roots:
        f = f * (X - ring(r))
    f = f * (X ** 2 - ring(t))
    assert set(FunctionFieldService.rational_roots(f)) == set(roots)
    assert FunctionFieldService.rational_roots(X * (X - ring(1))) == [f5.zero, f5.one]


def test_rational_roots_none(f5):
    ring = polynomial_ring(f5, "X")
    X = ring.gen
    assert FunctionFieldService.rational_roots(X ** 3 + ring(f5.gen) * X + 1) == []


def test_field_roots(f5):
    ring = polynomial_ring(f5.base, "x")
    x = ring.gen
    assert field_roots(x ** 2 - 4) == [f5.base(2), f5.base(3)]
    assert field_roots(x ** 2 - 2) == []


def test_sqrt(f5):
    t = f5.gen
    x = 4 * t ** 2 * (t + 1) ** 2 / (t - 1) ** 4
    root = FunctionFieldService.sqrt(x)
    assert root is not None and root * root == x
    assert FunctionFieldService.sqrt(t) is None
    assert FunctionFieldService.sqrt(2 * t ** 2) is None


def _random_poly(ring, rng, degree, monic=False):
    base = ring.base
    coeffs = [base.element(rng.randrange(base.order)) for _ in range(degree)]
    top = base.one if monic else base.element(rng.randrange(1, base.order))
    return ring.from_coeffs(coeffs + [top])


@pytest.mark.parametrize("p,n,degree", [(7, 1, 30), (11, 1, 30), (5, 2, 20), (11, 2, 30)])
def test_factor_recovers_product_of_large_degree(p, n, degree, rng):
    ring = function_field(p, n).poly_ring
    for _ in range(3):
        f = _random_poly(ring, rng, degree)
        product = ring.one
        for g, m in FunctionFieldService.factor(f):
            assert g.is_monic()
            assert FunctionFieldService.is_irreducible(g)
            product = product * g ** m
        assert product == f.monic()


@pytest.mark.parametrize("p,n", [(5, 1), (7, 1), (5, 2)])
def test_product_formula(p, n, rng):
    F = function_field(p, n)
    ring = F.poly_ring
    for _ in range(10):
        x = F(_random_poly(ring, rng, rng.randrange(6))) / F(_random_poly(ring, rng, rng.randrange(6)))
        places = [FunctionFieldService.infinite_place(F)]
        for f in (x.num, x.den):
            if f.degree > 0:
                places.extend(FunctionFieldService.finite_place(g) for g, _ in FunctionFieldService.factor(f))
        assert sum(v.degree * FunctionFieldService.valuation(x, v) for v in places) == 0


def _brute_force_roots(f, max_num_degree, max_den_degree):
    F = f.ring.base
    ring = F.poly_ring
    q = F.base.order
    numerators = [ring.zero] + [
        _poly_from_index(ring, index, d) + (ring.gen ** d).scale(c)
        for d in range(max_num_degree + 1)
        for index in range(q ** d)
        for c in F.base.elements()
        if not c.is_zero()
    ]
    denominators = [_poly_from_index(ring, index, d) + ring.gen ** d for d in range(max_den_degree + 1) for index in range(q ** d)]
    roots = set()
    for den in denominators:
        for num in numerators:
            x = F(num) / F(den)
            if f(x).is_zero():
                roots.add(x)
    return roots


def test_rational_roots_match_brute_force(f5, rng):
    ring = polynomial_ring(f5, "X")
    X = ring.gen
    poly_ring = f5.poly_ring
    for _ in range(4):
        r1 = f5(_random_poly(poly_ring, rng, 2)) / f5(_random_poly(poly_ring, rng, 1, monic=True))
        r2 = f5(_random_poly(poly_ring, rng, rng.randrange(3)))
        a = ring(f5(_random_poly(poly_ring, rng, 1)))
        b = ring(f5(_random_poly(poly_ring, rng, 1)))
        # roots of the monic quadratic factor are polynomials of degree <= 1
        f = (X - ring(r1)) * (X - ring(r2)) * (X ** 2 + a * X + b)
        assert set(FunctionFieldService.rational_roots(f)) == _brute_force_roots(f, 2, 1)
