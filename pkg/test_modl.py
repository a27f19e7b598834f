import pytest

from conftest import function_field
from src.curve.models import Curve
from src.ellgroup.models import IsogenyData
from src.ellgroup.service import x_ring
from src.exceptions import ConsistencyError, LEqualsCharacteristicError
from src.modl.lifting import HenselIsogenySearch, coefficient_degree_bound, degree_combinations
from src.modl.models import IsogenySearch, ModLCase, RationalTorsion
from src.modl.schemas import ModLClassOut
from src.modl.service import ModLService


@pytest.mark.parametrize(
    "case,chi,expected",
    [
        (ModLCase.FULL_TORSION, True, 2),
        (ModLCase.FULL_TORSION, False, 2),
        (ModLCase.SC, True, 1),
        (ModLCase.SC, False, 1),
        (ModLCase.B, True, 1),
        (ModLCase.B, False, 1),
        (ModLCase.BPRIME, True, 1),
        (ModLCase.BPRIME, False, 0),
    ],
)
def test_coinvariant_table(case, chi, expected):
    assert ModLService.coinvariant_dim(case, chi) == expected


@pytest.mark.parametrize("case", [ModLCase.BOREL_OTHER, ModLCase.NO_BOREL_FOUND])
def test_coinvariants_unknown_without_torsion_information(case):
    assert ModLService.coinvariant_dim(case, True) is None
    assert ModLService.coinvariant_dim(case, False) is None


def test_working_model_is_short_and_integral(curve11, f7):
    w = ModLService.working_model(curve11)
    assert w.curve.is_short
    t = f7.gen
    c = Curve(f7, [t, 1 / t, 0, 0, 1 / (t + 1)])
    w = ModLService.working_model(c)
    assert w.curve.is_short
    assert all(a.den.is_one() for a in w.curve.a)
    assert w.curve.invariants.j == c.invariants.j


@pytest.mark.parametrize("fixture", ["legendre5", "legendre13"])
def test_legendre_has_full_two_torsion(request, fixture):
    c = request.getfixturevalue(fixture)
    t = c.field.gen
    torsion = ModLService.rational_l_torsion(c, 2)
    assert torsion.rank == 2
    assert {P.x for P in torsion.points} == {c.field.zero, c.field.one, t * t}
    assert all(P.y.is_zero() for P in torsion.points)

    modl = ModLService.classify(c, 2)
    assert modl.case == ModLCase.FULL_TORSION
    assert modl.chi_trivial
    assert modl.coinv_dim == 2
    assert len(modl.rational_isogenies) == 3
    assert ModLService.surjectivity_flag(modl)


def test_curve11_rational_five_torsion(curve11):
    torsion = ModLService.rational_l_torsion(curve11, 5)
    assert torsion.rank == 1
    assert len(torsion.points) == 4
    assert all(P.is_on_curve() for P in torsion.points)
    assert {P.x for P in torsion.points} == {curve11.field.zero, curve11.field.gen}


def test_curve11_is_bprime(curve11):
    modl = ModLService.classify(curve11, 5)
    assert modl.case == ModLCase.BPRIME
    assert modl.chi_trivial
    assert modl.coinv_dim == 1
    assert modl.search_complete
    assert not ModLService.surjectivity_flag(modl)
    assert len(modl.rational_isogenies) == 1
    iso = modl.rational_isogenies[0]
    x = iso.kernel_poly.ring.gen
    assert iso.kernel_poly == x * (x - x.ring(curve11.field.gen))
    assert iso.origin == "torsion"
    assert iso.domain == curve11


def test_hensel_search_finds_torsion_kernel(curve11):
    w = ModLService.working_model(curve11).curve
    search = HenselIsogenySearch(w, 5).run()
    assert search.complete
    x = x_ring(w).gen
    assert [iso.kernel_poly for iso in search.isogenies] == [x * (x - x.ring(w.field.gen))]


def test_candidate_kernels(curve11):
    x = x_ring(curve11).gen
    good = x * (x - x.ring(curve11.field.gen))
    modl = ModLService.classify(curve11, 5, [good, x * (x - 1)])
    assert len(modl.rational_isogenies) == 1
    assert any("rejected" in note for note in modl.notes)


def test_no_borel_found(f5):
    t = f5.gen
    c = Curve(f5, [0, 0, 0, t, 1])
    for l in (2, 3):
        modl = ModLService.classify(c, l)
        assert modl.torsion_rank == 0
        assert modl.rational_isogenies == []
        assert modl.search_complete
        assert modl.case == ModLCase.NO_BOREL_FOUND
        assert modl.coinv_dim is None
        assert not ModLService.surjectivity_flag(modl)


def test_classify_rejects_l_equal_p(legendre5):
    with pytest.raises(LEqualsCharacteristicError):
        ModLService.classify(legendre5, 5)


def _fake_isogeny(c: Curve) -> IsogenyData:
    x = x_ring(c).gen
    return IsogenyData(x, c, c, 2, "search")


def test_b_case_from_codomain_torsion(monkeypatch, legendre5):
    codomain = Curve(legendre5.field, [0, 0, 0, 1, legendre5.field.gen])
    iso = IsogenyData(x_ring(legendre5).gen, legendre5, codomain, 3, "search")

    def torsion(c, l):
        return RationalTorsion(1 if c == codomain else 0, [])

    monkeypatch.setattr(ModLService, "rational_l_torsion", staticmethod(torsion))
    monkeypatch.setattr(
        ModLService, "find_rational_isogenies", staticmethod(lambda c, l, candidates=(): IsogenySearch([iso]))
    )
    modl = ModLService.classify(legendre5, 3)
    assert modl.case == ModLCase.B
    assert modl.coinv_dim == 1
    assert not ModLService.surjectivity_flag(modl)

    monkeypatch.setattr(ModLService, "rational_l_torsion", staticmethod(lambda c, l: RationalTorsion(0, [])))
    assert ModLService.classify(legendre5, 3).case == ModLCase.BOREL_OTHER


@pytest.mark.parametrize("p,chi,expected", [(7, True, 1), (11, False, None)])
def test_incomplete_search_bprime(monkeypatch, p, chi, expected):
    F = function_field(p)
    c = Curve(F, [0, 0, 0, F.gen, 1])
    monkeypatch.setattr(ModLService, "rational_l_torsion", staticmethod(lambda c, l: RationalTorsion(1, [])))
    monkeypatch.setattr(
        ModLService,
        "find_rational_isogenies",
        staticmethod(lambda c, l, candidates=(): IsogenySearch([_fake_isogeny(c)], complete=False)),
    )
    modl = ModLService.classify(c, 3)
    assert modl.case == ModLCase.BPRIME
    assert modl.chi_trivial == chi
    assert modl.coinv_dim == expected


def test_full_torsion_requires_trivial_character(monkeypatch, f7):
    c = Curve(f7, [0, 0, 0, f7.gen, 1])
    monkeypatch.setattr(ModLService, "rational_l_torsion", staticmethod(lambda c, l: RationalTorsion(2, [])))
    monkeypatch.setattr(
        ModLService, "find_rational_isogenies", staticmethod(lambda c, l, candidates=(): IsogenySearch())
    )
    # 5 does not divide 7 - 1
    with pytest.raises(ConsistencyError):
        ModLService.classify(c, 5)


def test_sc_case_with_two_isogenies(monkeypatch, f7):
    c = Curve(f7, [0, 0, 0, f7.gen, 1])
    monkeypatch.setattr(ModLService, "rational_l_torsion", staticmethod(lambda c, l: RationalTorsion(1, [])))
    monkeypatch.setattr(
        ModLService,
        "find_rational_isogenies",
        staticmethod(lambda c, l, candidates=(): IsogenySearch([_fake_isogeny(c), _fake_isogeny(c)])),
    )
    modl = ModLService.classify(c, 3)
    assert modl.case == ModLCase.SC
    assert modl.coinv_dim == 1
    assert ModLService.surjectivity_flag(modl)


def test_degree_combinations():
    assert list(degree_combinations([1, 1, 2], 2)) == [(0, 1), (2,)]
    assert list(degree_combinations([3, 4], 2)) == []


def test_coefficient_degree_bound(f5):
    t = f5.poly_ring.gen
    ring = f5.poly_ring
    # x^2 + t^2: roots of t-degree 1
    assert coefficient_degree_bound([t * t, ring.zero, ring.one], 1) == 1
    assert coefficient_degree_bound([t * t, ring.zero, ring.one], 2) == 2
    assert coefficient_degree_bound([t ** 3, ring.one, ring.zero, ring.one], 2) == 2


def test_classification_schema(legendre5):
    modl = ModLService.classify(legendre5, 2)
    out = ModLClassOut.from_class(modl, ModLService.surjectivity_flag(modl))
    assert out.case == "full_torsion"
    assert out.coinv_dim == 2
    assert out.surjective
    assert len(out.torsion_points) == 3
    assert {iso.origin for iso in out.rational_isogenies} == {"search"}
