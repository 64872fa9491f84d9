import math
from fractions import Fraction

import pytest

from models.srg import BoundSide, SrgParams
from services.srg_bounds_service import SrgBoundsService


@pytest.fixture(scope="module")
def bounds():
    return SrgBoundsService()


def params(v, k, a, c):
    return SrgParams(v=v, k=k, a=a, c=c)


@pytest.mark.parametrize("srg, expected", [
    ((9, 4, 1, 2), [(4, 1), (1, 4), (-2, 4)]),
    ((27, 10, 1, 5), [(10, 1), (1, 20), (-5, 6)]),
    ((10, 3, 0, 1), [(3, 1), (1, 5), (-2, 4)]),
])
def test_srg_spectrum_rational(srg, expected):
    spectrum = SrgBoundsService.srg_spectrum(params(*srg))
    assert spectrum.as_pairs() == [(Fraction(x), m) for x, m in expected]
    assert spectrum.exact
    assert spectrum.trace() == 0


def test_srg_spectrum_conference_graph():
    spectrum = SrgBoundsService.srg_spectrum(params(13, 6, 2, 3))
    (top, one), (r, f), (s, g) = spectrum.as_pairs()
    assert (top, one, f, g) == (6, 1, 6, 6)
    assert r == pytest.approx((-1 + math.sqrt(13)) / 2)
    assert s == pytest.approx((-1 - math.sqrt(13)) / 2)


def test_infeasible_parameters_rejected():
    with pytest.raises(ValueError):
        params(9, 4, 2, 2)


def test_taylor_params(bounds):
    assert bounds.taylor_params(3).as_tuple() == (27, 10, 1, 5)
    assert bounds.taylor_complement_params(3).as_tuple() == (27, 16, 10, 8)


@pytest.mark.parametrize("q", [1, 4, 15])
def test_taylor_params_rejects_bad_q(bounds, q):
    with pytest.raises(ValueError):
        bounds.taylor_params(q)


def test_taylor_spectra(bounds):
    taylor, complement = bounds.taylor_spectra(3)
    assert taylor.as_pairs() == [(10, 1), (1, 20), (-5, 6)]
    assert complement.as_pairs() == [(16, 1), (4, 6), (-2, 20)]


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_taylor_spectra_agree_with_srg_formula(bounds, q):
    taylor, complement = bounds.taylor_spectra(q)
    assert bounds.srg_spectrum(bounds.taylor_params(q)) == taylor
    assert bounds.srg_spectrum(bounds.taylor_complement_params(q)) == complement


def test_seidel_shift_spectrum(bounds):
    assert bounds.seidel_shift_spectrum(3).as_pairs() == [(8, 6), (5, 1), (-4, 20)]


def test_taylor_analytic_summary(bounds):
    summary = bounds.taylor_analytic_summary(3)
    assert summary.degree_ratio == Fraction(10, 27)
    assert summary.adjacent_common_ratio == Fraction(1, 27)
    assert summary.nonadjacent_common_ratio == Fraction(5, 27)
    assert summary.positive_mass_ratio == Fraction(2, 27)
    assert summary.complement_negative_mass_ratio == Fraction(5, 27)


@pytest.mark.parametrize("q", [3, 5, 7, 11, 13, 31])
def test_taylor_bound_chain_is_strict(q):
    left, middle, right = SrgBoundsService.taylor_bound_chain(q)
    assert left > middle > right


def test_prime_helpers(bounds):
    assert bounds.next_prime(14) == 17
    assert bounds.next_prime(7) == 7
    assert bounds.is_odd_prime_power(9)
    assert not bounds.is_odd_prime_power(15)
    assert not bounds.is_odd_prime_power(8)


def test_ub_ckstar_equality_at_two(bounds):
    report = bounds.ub_ckstar(2)
    assert report.value == Fraction(1, 2)
    assert report.side == BoundSide.UPPER
    assert any("equality" in note for note in report.notes)


def test_ub_ck_is_float_off_squares(bounds):
    assert bounds.ub_ck(5).value == Fraction(1, 4)
    assert isinstance(bounds.ub_ck(4).value, float)
    with pytest.raises(ValueError):
        bounds.ub_ck(1)


def test_lb_ck_explicit_small(bounds):
    report = bounds.lb_ck_explicit(5)
    assert report.value == Fraction(2, 9)
    assert report.lower == Fraction(2, 9)
    assert report.premise_holds
    assert report.witness["srg"] == (9, 4, 1, 2)


@pytest.mark.parametrize("k", range(5, 16))
def test_lb_ck_explicit_meets_stated_bound(bounds, k):
    assert bounds.lb_ck_explicit(k).premise_holds


def test_lb_ck_explicit_rejects_open_cases(bounds):
    with pytest.raises(ValueError):
        bounds.lb_ck_explicit(4)


def test_lb_ck_explicit_large_k(bounds):
    report = bounds.lb_ck_explicit(17)
    assert report.value == Fraction(1, 16)
    assert report.premise_holds


@pytest.mark.parametrize("k, expected", [(1, 1), (2, 3), (3, 10), (4, 35)])
def test_ramsey_threshold(bounds, k, expected):
    assert bounds.ramsey_threshold(k).value == expected


def test_lb_ck_taylor(bounds):
    report = bounds.lb_ck_taylor(7)
    assert report.witness["q"] == 3
    assert report.value == Fraction(5, 27)
    assert report.value > 1 / (2 * math.sqrt(6) + 1)
    assert report.witness["srg"] == (27, 16, 10, 8)
    assert report.premise_holds


def test_lb_ck_taylor_rejects_other_k(bounds):
    with pytest.raises(ValueError):
        bounds.lb_ck_taylor(8)
    # 13 = 4^2 - 4 + 1 but q = 4 is even
    with pytest.raises(ValueError):
        bounds.lb_ck_taylor(13)


def test_ng_upper(bounds):
    reports = {r.name: r for r in bounds.ng_upper(2, 15)}
    assert set(reports) == {"ng_upper.f_k", "ng_upper.f_minus_k", "ng_upper.f_star_k"}
    assert reports["ng_upper.f_star_k"].value == Fraction(15)
    assert reports["ng_upper.f_k"].premise_holds
    assert not reports["ng_upper.f_minus_k"].premise_holds


def test_kyfan_upper(bounds):
    assert bounds.kyfan_upper(4, 8).value == Fraction(12)
    with pytest.raises(ValueError):
        bounds.kyfan_upper(4, 3)


def test_umn_bounds(bounds):
    reports = {r.name: r for r in bounds.umn_bounds(5, 10)}
    assert reports["umn_bounds.d_star"].value == Fraction(1, 3)
    assert reports["umn_bounds.lambda_star"].value == pytest.approx(10 / math.sqrt(5))


def test_xi_limit_bracket(bounds):
    assert bounds.xi_limit_bracket(4).value == Fraction(3, 2)
    report = bounds.xi_limit_bracket(2)
    assert report.lower == pytest.approx(math.sqrt(2) / 2)


def test_evaluate_dispatch(bounds):
    [report] = bounds.evaluate("ramsey_threshold", 3)
    assert report.value == 10
    assert len(bounds.evaluate("ng_upper", 2, 30)) == 3


def test_evaluate_rejects_unknown_or_missing_n(bounds):
    with pytest.raises(ValueError):
        bounds.evaluate("no_such_bound", 2)
    with pytest.raises(ValueError):
        bounds.evaluate("kyfan_upper", 2)


@pytest.mark.parametrize("kind, start", [("ck", 2), ("ckstar", 2), ("ng", 2), ("kyfan", 1)])
def test_bound_table(bounds, kind, start):
    df = bounds.bound_table(kind, 8)
    assert list(df["k"]) == list(range(start, 9))
    assert not df["crossing"].any()


def test_bound_table_rejects_unknown_kind(bounds):
    with pytest.raises(ValueError):
        bounds.bound_table("nope", 8)
