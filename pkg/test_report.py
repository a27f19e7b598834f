import random

import pytest

from conftest import function_field
from src.config import settings
from src.curve.models import Curve
from src.exceptions import ConsistencyError, ResourceBoundExceeded, SingularCurveError, UndeterminedResultError
from src.funcfield.service import FunctionFieldService
from src.modl.models import ModLCase, ModLClass
from src.modl.service import ModLService
from src.report.models import DimRange
from src.report.schemas import GlobalReportOut
from src.report.service import ReportService, is_consistent, sequence_bounds
from sweep_random_curves import random_curve, run_sweep


def test_dim_range():
    assert str(DimRange.point(2)) == "2"
    assert str(DimRange(1, 2)) == "[1, 2]"
    assert DimRange(0, 2) + DimRange.point(1) == DimRange(1, 3)
    assert 2 in DimRange(1, 3)
    assert 4 not in DimRange(1, 3)
    assert DimRange.point(1).value == 1
    assert DimRange(0, 1).value is None


def test_sequence_bounds_surjective():
    ker, coker = sequence_bounds(DimRange.point(4), 2, surjective=True)
    assert ker == DimRange.point(2)
    assert coker == DimRange.point(0)
    ker, coker = sequence_bounds(DimRange(1, 5), 2, surjective=True)
    assert ker == DimRange(0, 3)
    with pytest.raises(ConsistencyError):
        sequence_bounds(DimRange(0, 1), 2, surjective=True)


def test_sequence_bounds_not_surjective():
    ker, coker = sequence_bounds(DimRange.point(2), 1, surjective=False)
    assert ker == DimRange(1, 2)
    assert coker == DimRange(0, 1)
    ker, coker = sequence_bounds(DimRange.point(0), 1, surjective=False)
    assert ker == DimRange(0, 0)
    assert coker == DimRange.point(1)


def test_is_consistent():
    assert is_consistent(DimRange.point(4), 2, DimRange.point(2), DimRange.point(0))
    assert not is_consistent(DimRange.point(4), 2, DimRange.point(3), DimRange.point(0))
    assert is_consistent(DimRange.point(2), 1, DimRange(1, 2), DimRange(0, 1))


@pytest.mark.parametrize("fixture", ["legendre5", "legendre13"])
def test_legendre_report(request, fixture):
    c = request.getfixturevalue(fixture)
    report = ReportService.build_report(c, 2)
    assert [pr.info.place.label for pr in report.places] == ["t", "t+1", "t-1", "inf"]
    assert report.infinity.local.dim == 1
    assert len(report.bad_finite) == 3
    assert report.sum_bad_inf == DimRange.point(4)
    assert report.modl.case == ModLCase.FULL_TORSION
    assert report.coinv == 2
    assert report.applicable
    assert report.surjective
    assert report.ker_dim == DimRange.point(2)
    assert report.coker_dim == DimRange.point(0)
    assert report.is_fully_known
    assert report.warnings == []
    assert ReportService.render_sequence(report) == "0 → Ker → F_2^4 → F_2^2 → Coker → 0"
    ReportService.require_point_values(report)


def test_curve11_report(curve11):
    report = ReportService.build_report(curve11, 5)
    dims = {pr.info.place.label: pr.local.dim for pr in report.places}
    assert dims == {"t": 1, "t+1": 0, "t-1": 0, "inf": 1}
    assert report.modl.case == ModLCase.BPRIME
    assert report.coinv == 1
    assert not report.surjective
    assert report.ker_dim == DimRange(1, 2)
    assert report.coker_dim == DimRange(0, 1)
    assert not report.is_fully_known
    assert ReportService.render_sequence(report) == "0 → Ker → F_5^2 → F_5^1 → Coker → 0"
    with pytest.raises(UndeterminedResultError):
        ReportService.require_point_values(report)


def test_report_with_undetermined_coinvariants(f5):
    c = Curve(f5, [0, 0, 0, f5.gen, 1])
    report = ReportService.build_report(c, 3)
    assert report.modl.case == ModLCase.NO_BOREL_FOUND
    assert report.coinv is None
    assert report.applicable is None
    assert report.ker_dim is None and report.coker_dim is None
    assert any("undetermined" in w for w in report.warnings)
    assert ReportService.render_sequence(report).endswith("F_3^? → Coker → 0")
    assert "exact sequence undetermined" in ReportService.render_text(report)
    with pytest.raises(UndeterminedResultError):
        ReportService.require_point_values(report)


def test_report_with_vanishing_coinvariants(monkeypatch, curve11):
    def classify(c, l, candidates=()):
        return ModLClass(
            l=l,
            torsion_rank=1,
            torsion_points=[],
            rational_isogenies=[],
            case=ModLCase.BPRIME,
            chi_trivial=False,
            coinv_dim=0,
        )

    monkeypatch.setattr(ModLService, "classify", staticmethod(classify))
    report = ReportService.build_report(curve11, 5)
    assert report.coinv == 0
    assert report.applicable is False
    assert report.ker_dim is None
    assert any("vanish" in w for w in report.warnings)
    assert "exact sequence not applicable" in ReportService.render_text(report)


def test_undetermined_local_dim_contributes_interval(f5):
    c = Curve(f5, [0, 2, 0, 0, f5.gen])
    place = FunctionFieldService.finite_place(f5.poly_ring.gen)
    pr = ReportService._place_report(c, place, 2)
    assert pr.local.dim is None
    assert pr.contribution == DimRange(0, 2)
    assert ReportService._place_report(c, place, 7).contribution == DimRange.point(0)


def test_infinity_is_always_reported(f7):
    t = f7.gen
    # discriminant of degree 12: good reduction at infinity
    c = Curve(f7, [0, 0, 0, 0, t ** 6 + 1])
    report = ReportService.build_report(c, 2)
    assert report.places[-1].info.place.is_infinite
    assert report.infinity.info.model.vdisc == 0


def test_parallel_place_reports(monkeypatch, legendre5):
    serial = ReportService.place_reports(legendre5, 2)
    monkeypatch.setattr(settings, "max_workers", 4)
    parallel = ReportService.place_reports(legendre5, 2)
    assert [pr.local for pr in parallel] == [pr.local for pr in serial]


def test_exactness_violation_is_detected(legendre5):
    report = ReportService.build_report(legendre5, 2)
    report.ker_dim = DimRange.point(3)
    with pytest.raises(ConsistencyError):
        ReportService.check_exactness(report)


def test_torsion_sanity(legendre5, f5):
    assert ReportService.torsion_sanity(legendre5, {2: 2}) == []
    warnings = ReportService.torsion_sanity(legendre5, {7: 2, 13: 1})
    assert len(warnings) == 2
    assert ReportService.torsion_sanity(legendre5, ls=[2, 3]) == []
    isotrivial = Curve(f5, [0, 0, 0, 0, f5.gen])
    assert "isotrivial" in ReportService.torsion_sanity(isotrivial, {2: 2})[0]


def test_default_sanity_primes(legendre5):
    assert ReportService.default_sanity_primes(legendre5) == [2, 3, 7, 11, 13]


def test_render_text(legendre5):
    text = ReportService.render_text(ReportService.build_report(legendre5, 2))
    assert "discriminant: t^4·(t+1)^2·(t-1)^2" in text
    assert "ker_dim = 2, coker_dim = 0" in text
    assert "mod-2 case: full_torsion" in text


def test_report_document(curve11):
    out = GlobalReportOut.from_report(ReportService.build_report(curve11, 5))
    assert out.curve.p == 11 and out.curve.q == 11
    assert [pr.reduction.place.label for pr in out.places] == ["t", "t+1", "t-1", "inf"]
    assert out.sum_bad_inf.known and out.sum_bad_inf.lo == 2
    assert out.ker_dim.lo == 1 and out.ker_dim.hi == 2 and not out.ker_dim.known
    assert out.modl.case == "Bprime"
    assert out.sequence == "0 → Ker → F_5^2 → F_5^1 → Coker → 0"
    document = out.model_dump()
    assert document["coinv"] == 1
    assert document["applicable"] is True


def _curve_with_two_torsion(rng: random.Random, p: int) -> Curve:
    """(x - e)(x^2 + bx + c) with e, b, c of t-degree <= 2."""
    F = function_field(p)
    while True:
        e, b, c = (F(F.poly_ring.from_coeffs([rng.randrange(p) for _ in range(3)])) for _ in range(3))
        try:
            return Curve(F, [0, b - e, 0, c - e * b, -e * c])
        except SingularCurveError:
            continue


def test_random_reports_respect_exactness():
    rng = random.Random(7)
    built, evaluated = 0, 0
    for i in range(60):
        p = (5, 7, 11)[i % 3]
        c = random_curve(rng, p) if i % 2 else _curve_with_two_torsion(rng, p)
        for l in (2, 3):
            try:
                report = ReportService.build_report(c, l)
            except ResourceBoundExceeded:
                continue
            built += 1
            if not report.applicable:
                assert report.ker_dim is None and report.coker_dim is None
                continue
            evaluated += 1
            if report.is_fully_known:
                ReportService.check_exactness(report)
                assert report.sum_bad_inf.value - report.coinv == report.ker_dim.value - report.coker_dim.value
            else:
                assert is_consistent(report.sum_bad_inf, report.coinv, report.ker_dim, report.coker_dim)
    assert built >= 100
    # every curve with a rational 2-torsion point has a known coinvariant dimension at l = 2
    assert evaluated >= 25


def test_sweep_table():
    df = run_sweep(6, seed=3)
    assert len(df) == 12
    assert set(df["l"]) == {2, 3}
    assert not (df["status"] == "consistency").any()
    if "consistent" in df.columns:
        assert df["consistent"].dropna().all()
