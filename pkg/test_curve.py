import pytest

from src.curve.models import Curve, Transform
from src.curve.service import CurveService
from src.exceptions import ArithmeticDomainError, SingularCurveError, UnsupportedCharacteristicError
from src.funcfield.service import FunctionFieldService
from conftest import function_field


def test_legendre_invariants(legendre5):
    t = legendre5.field.gen
    inv = CurveService.invariants(legendre5)
    assert inv.disc == 16 * t ** 4 * (t * t - 1) ** 2
    assert inv.c4 == 16 * (t ** 4 - t ** 2 + 1)
    assert inv.j == 256 * (t ** 4 - t ** 2 + 1) ** 3 / (t ** 4 * (t * t - 1) ** 2)


def test_singular_curve_rejected(f5):
    with pytest.raises(SingularCurveError):
        Curve(f5, [0, 0, 0, 0, 0])
    t = f5.gen
    # x^2 (x - t)
    with pytest.raises(SingularCurveError):
        Curve(f5, [0, -t, 0, 0, 0])


def test_curve_str(legendre5):
    assert str(legendre5) == "y^2 = x^3+(-t^2-1)*x^2+t^2*x"
    assert legendre5.contains(legendre5.field.gen ** 2, legendre5.field.zero)


def test_transform_roundtrip(curve11):
    F = curve11.field
    t = F.gen
    tr = Transform(t + 1, t, 2 * t, F(3))
    moved = CurveService.apply_transform(curve11, tr)
    back = CurveService.apply_transform(moved, tr.inverse())
    assert back == curve11
    assert tr.compose(tr.inverse()).is_identity()
    # discriminant scales by u^-12
    assert moved.invariants.disc == curve11.invariants.disc / (t + 1) ** 12
    assert moved.invariants.j == curve11.invariants.j


def test_transform_maps_points_back(curve11):
    F = curve11.field
    t = F.gen
    tr = Transform(t, F(1), F(2), t)
    moved = CurveService.apply_transform(curve11, tr)
    inv = tr.inverse()
    # (0, 0) on curve11 moves to a point on the new model
    x, y = inv.point_to_original(F.zero, F.zero)
    assert moved.contains(x, y)
    assert curve11.contains(*tr.point_to_original(x, y))


def test_complete_square(curve11):
    short, tr = CurveService.complete_square(curve11)
    assert short.a1.is_zero() and short.a3.is_zero()
    assert short.invariants.disc == curve11.invariants.disc
    assert CurveService.apply_transform(curve11, tr) == short


def test_integral_model(f7):
    t = f7.gen
    c = Curve(f7, [0, 0, 0, 1 / t, 1 / (t * t)])
    model, tr = CurveService.integral_model(c)
    assert all(a.den.is_one() for a in model.a)
    assert model.invariants.j == c.invariants.j
    same, identity = CurveService.integral_model(model)
    assert same == model and identity.is_identity()


def test_bad_places_of_legendre(legendre5):
    places = CurveService.bad_places(legendre5)
    assert [v.label for v in places] == ["t", "t+1", "t-1", "inf"]


def test_minimal_model_at_infinity(legendre5):
    inf = FunctionFieldService.infinite_place(legendre5.field)
    local = CurveService.minimal_model_at(legendre5, inf)
    assert local.vdisc == 4
    assert local.is_minimal
    assert CurveService.apply_transform(legendre5, local.transform) == local.model


def test_minimal_model_removes_twelfth_powers(f7):
    t = f7.gen
    # u = t scales a4 by t^4 and a6 by t^6
    c = Curve(f7, [0, 0, 0, t ** 4, t ** 6 * (t + 1)])
    place = FunctionFieldService.finite_place(f7.poly_ring.gen)
    local = CurveService.minimal_model_at(c, place)
    assert local.vdisc == FunctionFieldService.valuation(c.invariants.disc, place) - 12
    assert local.is_minimal


def test_bad_places_of_curve11(curve11):
    places = CurveService.bad_places(curve11)
    assert [v.label for v in places] == ["t", "t+1", "t-1", "inf"]
    inf = places[-1]
    assert CurveService.minimal_model_at(curve11, inf).vdisc == 5
    at_t = places[0]
    assert CurveService.minimal_model_at(curve11, at_t).vdisc == 5


def test_reduce_curve_at_good_place(legendre5):
    place = FunctionFieldService.finite_place(legendre5.field.poly_ring.gen - 2)
    local = CurveService.minimal_model_at(legendre5, place)
    reduced = CurveService.reduce_curve(local)
    F = place.residue_field
    assert reduced.a == (F.zero, F(0), F.zero, F(4), F.zero)
    bad = CurveService.minimal_model_at(legendre5, FunctionFieldService.finite_place(legendre5.field.poly_ring.gen))
    with pytest.raises(ArithmeticDomainError):
        CurveService.reduce_curve(bad)


def test_specialize(legendre5):
    F = legendre5.field.base
    fibre = CurveService.specialize(legendre5, F(2))
    assert fibre.a == (F.zero, F(0), F.zero, F(4), F.zero)
    with pytest.raises(SingularCurveError):
        CurveService.specialize(legendre5, F(1))


def test_small_characteristic_unsupported():
    F3 = function_field(3)
    t = F3.gen
    c = Curve(F3, [0, 0, 0, t, 1])
    with pytest.raises(UnsupportedCharacteristicError):
        CurveService.bad_places(c)


def _random_element(F, rng, degree, nonzero=False):
    ring = F.poly_ring
    p = F.base.order
    top = rng.randrange(1, p) if nonzero else rng.randrange(p)
    num = ring.from_coeffs([rng.randrange(p) for _ in range(degree)] + [top])
    den = ring.from_coeffs([rng.randrange(p) for _ in range(rng.randrange(2))] + [1])
    return F(num) / F(den)


def test_random_transforms_scale_discriminant(curve11, rng):
    F = curve11.field
    disc, j = curve11.invariants.disc, curve11.invariants.j
    for _ in range(100):
        u = _random_element(F, rng, rng.randrange(2), nonzero=True)
        r, s, t = (_random_element(F, rng, rng.randrange(3)) for _ in range(3))
        moved = CurveService.apply_transform(curve11, Transform(u, r, s, t))
        assert moved.invariants.disc == disc / u ** 12
        assert moved.invariants.j == j


def _places_to_check(c):
    F = c.field
    return CurveService.bad_places(c) + FunctionFieldService.places_of_degree(F, 1)[:3]


@pytest.mark.parametrize("name", ["legendre5", "curve11", "scaled"])
def test_minimal_model_is_stable(name, legendre5, curve11, f7):
    t = f7.gen
    curves = {"legendre5": legendre5, "curve11": curve11, "scaled": Curve(f7, [0, 0, 0, t ** 4, t ** 6 * (t + 1)])}
    c = curves[name]
    for place in _places_to_check(c):
        local = CurveService.minimal_model_at(c, place)
        again = CurveService.minimal_model_at(local.model, place)
        assert again.transform.is_identity()
        assert again.model == local.model
        assert again.vdisc == local.vdisc
        assert local.vj == FunctionFieldService.valuation(c.invariants.j, place)


def test_bad_places_invariant_under_constant_scaling(curve11):
    F = curve11.field
    labels = [v.label for v in CurveService.bad_places(curve11)]
    for u in (2, 3, 10):
        scaled = CurveService.apply_transform(curve11, Transform(F(u), F.zero, F.zero, F.zero))
        assert [v.label for v in CurveService.bad_places(scaled)] == labels


@pytest.mark.parametrize("p", [5, 7, 11])
def test_constant_curve_has_no_bad_places(p):
    F = function_field(p)
    assert CurveService.bad_places(Curve(F, [0, 0, 0, -1, 0])) == []
