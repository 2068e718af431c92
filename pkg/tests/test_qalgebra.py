"""RTT orders, dressing, reflection equation and reflection algebra."""

from fractions import Fraction

import pytest

from stybe.poly import MU, Poly
from stybe.polymat import PolyMatrix
from stybe.qalgebra import (DressParams, SeriesOperator,
                            check_reflection_algebra,
                            check_reflection_equation, check_rtt_series,
                            coproduct_reflection_check, coproduct_rtt_check,
                            dress_reflection, fundamental_l_series,
                            series_from_polymatrix)
from stybe.reflection import ReflectionMap, verify_reflection
from stybe.rmatrix import HypothesisNotMet, linearize
from stybe.ybe import SetSolution, enumerate_solutions, solution_from_structure

from conftest import conjugation_solution


@pytest.fixture
def z4_lin(z4_brace):
    return linearize(solution_from_structure(z4_brace, "rump"))


# -- RTT -------------------------------------------------------------------

def test_fundamental_rtt_flip():
    lin = linearize(SetSolution.flip(2))
    report = check_rtt_series(lin, fundamental_l_series(lin), max_order=3)
    assert report.passed
    assert report.modes_agree
    assert report.yangian_form_ok is True


def test_fundamental_rtt_brace(z4_lin):
    report = check_rtt_series(z4_lin, fundamental_l_series(z4_lin), max_order=2)
    assert report.passed and report.modes_agree
    assert report.yangian_form_ok is None  # rcheck is not the plain flip


def test_rtt_all_involutive_n3():
    for sol in enumerate_solutions(3, involutive=True, canonical=True):
        lin = linearize(sol)
        report = check_rtt_series(lin, fundamental_l_series(lin), max_order=3)
        assert report.passed and report.modes_agree, sol


def test_rtt_detects_corrupted_series(z4_lin):
    series = fundamental_l_series(z4_lin)
    bad1 = PolyMatrix(series.coeffs[1].slots, dict(series.coeffs[1].entries))
    bad1.entries[(0, 0)] = bad1.entries.get((0, 0), Poly.zero()) + 1
    bad = SeriesOperator(series.slots, [series.coeffs[0], bad1], exact=True)
    report = check_rtt_series(z4_lin, bad, max_order=1)
    assert not report.passed
    assert report.modes_agree  # both routes see the same failure
    failing = [v for v in report.orders if not v.matrix_ok]
    assert failing and failing[0].witness is not None


def test_rtt_coproduct(z4_lin):
    report = coproduct_rtt_check(z4_lin, max_order=2)
    assert report.passed and report.modes_agree


def test_series_round_trip_and_padding():
    m = PolyMatrix([2], {(0, 0): 1 + MU, (1, 1): MU * MU})
    series = series_from_polymatrix(m)
    assert series.depth == 2
    assert series.as_polynomial() == m
    assert series.coeff(5).is_zero() and series.accessible(5)
    inexact = SeriesOperator(series.slots, series.coeffs, exact=False)
    assert not inexact.accessible(5)
    again = SeriesOperator.from_json(series.to_json())
    assert again.coeffs == series.coeffs and again.exact


# -- dressing --------------------------------------------------------------

def test_dressed_k_closed_form(z4_lin):
    # with K0 = I and theta = 0 the dressed operator collapses to
    # (r + mu P)(r21 + mu P) = I + mu (P rc P rc ... ) -- verify against the
    # hand expansion (1 + mu^2) I + 2 mu P rc P  restricted by r r21 = I
    n = z4_lin.n
    perm = PolyMatrix.permutation(n)
    dressed = dress_reflection(z4_lin).kmatrix
    expected = PolyMatrix.identity([n, n]).scale(1 + MU * MU) + \
        (perm @ z4_lin.r_check @ perm).scale(2 * MU)
    assert dressed == expected
    assert "dropped_factor" in dress_reflection(z4_lin).normalization


def test_dressing_refused_non_involutive():
    lin = linearize(conjugation_solution())
    with pytest.raises(HypothesisNotMet):
        dress_reflection(lin)


def test_dressed_k_satisfies_re(z4_lin):
    dressed = dress_reflection(z4_lin)
    report = check_reflection_equation(z4_lin, dressed.kmatrix)
    assert report.passed


def test_dressed_k_with_theta_satisfies_re(z4_lin):
    for theta in ("symbolic", Fraction(3, 2)):
        dressed = dress_reflection(z4_lin, DressParams(theta=theta))
        assert check_reflection_equation(z4_lin, dressed.kmatrix).passed


def test_re_all_involutive_n3():
    for sol in enumerate_solutions(3, involutive=True, canonical=True):
        lin = linearize(sol)
        dressed = dress_reflection(lin, DressParams(theta="symbolic"))
        assert check_reflection_equation(lin, dressed.kmatrix).passed, sol


def test_re_constant_mode_matches_set_reflection(z4_brace):
    sol = solution_from_structure(z4_brace, "rump")
    lin = linearize(sol)
    ident = ReflectionMap(range(4))
    assert verify_reflection(sol, ident, "direct").passed
    kmat = PolyMatrix([4], {(ident(x), x): Poly.one() for x in range(4)})
    assert check_reflection_equation(lin, kmat, constant_mode=True).passed
    # a map failing the set-level check fails the matrix-level check too
    for table in ((1, 0, 2, 3), (0, 0, 0, 0), (3, 2, 1, 0)):
        k = ReflectionMap(table)
        kmat = PolyMatrix([4], {(k(x), x): Poly.one() for x in range(4)})
        set_ok = verify_reflection(sol, k, "direct").passed
        mat_ok = check_reflection_equation(lin, kmat, constant_mode=True).passed
        assert set_ok == mat_ok, table


def test_corrupted_kmatrix_detected(z4_lin):
    dressed = dress_reflection(z4_lin)
    bad = PolyMatrix(dressed.kmatrix.slots, dict(dressed.kmatrix.entries))
    bad.entries[(0, 1)] = bad.entries.get((0, 1), Poly.zero()) + MU
    report = check_reflection_equation(z4_lin, bad)
    assert not report.passed
    assert report.witness is not None


def test_coproduct_reflection(z4_lin):
    report = coproduct_reflection_check(z4_lin, DressParams(theta="symbolic"))
    assert report.passed


# -- reflection algebra ----------------------------------------------------

def test_reflection_algebra_from_dressed_k(z4_lin):
    series = series_from_polymatrix(dress_reflection(z4_lin).kmatrix)
    assert series.depth == 2
    report = check_reflection_algebra(z4_lin, series, max_order=2)
    assert report.passed
    assert report.rela1_ok and report.rela2_ok
    assert report.k0_proportional_identity
    assert report.finite_subalgebra


def test_reflection_algebra_all_involutive_n3():
    for sol in enumerate_solutions(3, involutive=True, canonical=True):
        lin = linearize(sol)
        series = series_from_polymatrix(dress_reflection(lin).kmatrix)
        assert check_reflection_algebra(lin, series, max_order=2).passed, sol


def test_reflection_algebra_detects_corrupted_k1(z4_lin):
    series = series_from_polymatrix(dress_reflection(z4_lin).kmatrix)
    k1 = PolyMatrix(series.coeffs[1].slots, dict(series.coeffs[1].entries))
    k1.entries[(0, 0)] = k1.entries.get((0, 0), Poly.zero()) + 1
    bad = SeriesOperator(series.slots, (series.coeffs[0], k1, series.coeffs[2]),
                         exact=True)
    report = check_reflection_algebra(z4_lin, bad, max_order=2)
    assert not report.passed
    failing = [v for v in report.orders if not v.matrix_ok]
    assert failing and failing[0].witness is not None
    # cross-check with the independent two-variable route
    assert not check_reflection_equation(z4_lin, bad.as_polynomial()).passed


def test_reflection_algebra_guards(z4_lin):
    with pytest.raises(ValueError):
        check_reflection_algebra(
            z4_lin, SeriesOperator([4, 4], [PolyMatrix.identity([4, 4])]))
    lin = linearize(conjugation_solution())
    series = SeriesOperator([6, 6], [PolyMatrix.identity([6, 6])] * 3)
    with pytest.raises(HypothesisNotMet):
        check_reflection_algebra(lin, series)


def test_inexact_series_restricts_orders(z4_lin):
    exact = series_from_polymatrix(dress_reflection(z4_lin).kmatrix)
    inexact = SeriesOperator(exact.slots, exact.coeffs, exact=False)
    report = check_reflection_algebra(z4_lin, inexact)
    # only n + m <= depth - 2 = 0 is fully determined
    assert [(v.n, v.m) for v in report.orders] == [(0, 0)]
    assert report.passed
