"""Acceptance gate: one criterion per test, one pass/fail line each.

Every check is exact (zero tolerance); each criterion also enforces its
runtime budget.  Run with ``pytest tests/test_acceptance.py -v -s``.
"""

import itertools
import json
import random
import time

from stybe.algebra import enumerate_near_braces, verify_structure
from stybe.cli import main as cli_main
from stybe.poly import L
from stybe.qalgebra import (SeriesOperator, check_reflection_algebra,
                            check_reflection_equation, check_rtt_series,
                            dress_reflection, fundamental_l_series,
                            series_from_polymatrix)
from stybe.polymat import PolyMatrix
from stybe.poly import Poly
from stybe.reflection import ReflectionMap, central_elements, verify_reflection
from stybe.rmatrix import build_and_check_twist, check_basic_properties, linearize
from stybe.ybe import (SetSolution, diagnostics, enumerate_solutions,
                       solution_from_structure, verify_braid)

from conftest import brute_force_solutions, relabel_class_count


class _Criterion:
    def __init__(self, number, description, budget_s):
        self.number = number
        self.description = description
        self.budget = budget_s
        self.start = time.monotonic()

    def finish(self, ok):
        elapsed = time.monotonic() - self.start
        verdict = "PASS" if ok and elapsed < self.budget else "FAIL"
        print(f"[criterion {self.number:02d}] {verdict} "
              f"({elapsed:.1f}s / budget {self.budget}s) {self.description}")
        assert ok, f"criterion {self.number}: {self.description}"
        assert elapsed < self.budget, \
            f"criterion {self.number} exceeded budget: {elapsed:.1f}s"


def test_criterion_01_brace_to_solution_soundness():
    c = _Criterion(1, "every left brace of size <= 6 gives an involutive "
                      "non-degenerate braid solution", 60)
    ok = True
    for n in range(1, 7):
        for nb in enumerate_near_braces(n, "left_brace"):
            sol = solution_from_structure(nb, "rump")
            diag = diagnostics(sol)
            ok = ok and verify_braid(sol).passed and diag.involutive \
                and diag.non_degenerate
    c.finish(ok)


def test_criterion_02_near_brace_soundness():
    # This criterion is stated for every near brace, but the construction
    # theorem's proof uses the singular identity a - a.0 = 1 (step (2) of the
    # key proposition expands a.(b.c - b.0 + 1) and replaces a - a.0 by 1),
    # and plain near braces violating it exist: with + the Klein group and
    # a.b = a+b+1 mod 4, both operations are groups and the distributivity
    # axiom holds, yet the induced map fails the braid equation on 48 of the
    # 64 triples.  The test runs the literal claim and fails honestly; the
    # repaired claim (singular near braces) is verified to hold exactly.
    c = _Criterion(2, "every near brace of size <= 4 gives a braid solution; "
                      "abelian addition implies involutive", 120)
    literal_ok = True
    failures = []
    for n in range(1, 5):
        for nb in enumerate_near_braces(n, "near_brace"):
            sol = solution_from_structure(nb, "near")
            passed = verify_braid(sol).passed
            singular = verify_structure(nb, "singular_near_brace").valid
            if not passed:
                literal_ok = False
                failures.append((nb, singular))
            # sharp empirical statement: passes iff singular
            assert passed == singular, nb.to_json()
            if passed and nb.add.is_abelian():
                assert diagnostics(sol).involutive
    repaired_ok = True
    for n in range(1, 5):
        for nb in enumerate_near_braces(n, "singular_near_brace"):
            sol = solution_from_structure(nb, "near")
            repaired_ok = repaired_ok and verify_braid(sol).passed
            if nb.add.is_abelian():
                repaired_ok = repaired_ok and diagnostics(sol).involutive
    assert repaired_ok
    if not literal_ok:
        nb, _ = failures[0]
        print(f"[criterion 02] note: {len(failures)} non-singular near braces "
              f"of size <= 4 fail the braid equation; first counterexample "
              f"add={list(map(list, nb.add.op))} mul={list(map(list, nb.mul.op))}. "
              f"All singular near braces pass (repaired claim verified); "
              f"at these sizes the map solves the braid equation iff the "
              f"near brace is singular.")
    c.finish(literal_ok)


def test_criterion_03_trivial_skew_brace_conjugation(s3_trivial_skew_brace):
    c = _Criterion(3, "trivial skew brace on S3 yields the non-involutive "
                      "conjugation-type solution", 5)
    sol = solution_from_structure(s3_trivial_skew_brace, "gv")
    diag = diagnostics(sol)
    gt = s3_trivial_skew_brace.mul
    inv = gt.inverses()
    conj_sigma = all(sol.sigma[a][b] == gt(inv[a], gt(a, b))
                     for a in range(6) for b in range(6))
    c.finish(verify_braid(sol).passed and not diag.involutive and conj_sigma)


def test_criterion_04_decomposition_equivalence():
    c = _Criterion(4, "direct braid check iff C1^C2^C3 on 1000 random tables, "
                      "N <= 3", 30)
    rng = random.Random(42)
    ok = True
    saw_fail = saw_pass = False
    for _ in range(1000):
        n = rng.choice((2, 3))
        perms = list(itertools.permutations(range(n)))
        sol = SetSolution(n, [list(rng.choice(perms)) for _ in range(n)],
                          [list(rng.choice(perms)) for _ in range(n)])
        report = verify_braid(sol)
        ok = ok and report.methods_agree
        constraints = report.c1[0] and report.c2[0] and report.c3[0]
        ok = ok and (report.direct_ok == constraints)
        saw_fail = saw_fail or not report.direct_ok
        saw_pass = saw_pass or report.direct_ok
    c.finish(ok and saw_fail and saw_pass)


def test_criterion_05_enumeration_golden_values():
    c = _Criterion(5, "involutive non-degenerate counts up to relabeling: "
                      "N=1:1, N=2:2 (oracle), N=3:5 (pinned)", 120)
    ok = True
    for n, expected in ((1, 1), (2, 2)):
        oracle = relabel_class_count(brute_force_solutions(n, involutive=True), n)
        ours = len(list(enumerate_solutions(n, involutive=True, canonical=True)))
        ok = ok and oracle == expected == ours
    ours3 = len(list(enumerate_solutions(3, involutive=True, canonical=True)))
    ok = ok and ours3 == 5
    c.finish(ok)


def _involutive_solutions(max_n):
    for n in range(1, max_n + 1):
        yield from enumerate_solutions(n, involutive=True, canonical=True)


def test_criterion_06_matrix_identities():
    c = _Criterion(6, "two-variable YBE, unitarity -l^2+1, transpose symmetry "
                      "and crossing l(-l-N) for every involutive solution "
                      "of size <= 4", 300)
    ok = True
    for sol in _involutive_solutions(4):
        report = check_basic_properties(linearize(sol))
        n = sol.n
        ok = ok and report.passed
        ok = ok and report.ybe.status == "pass"
        ok = ok and report.transpose_symmetry.status == "pass"
        ok = ok and report.unitarity.scalar == str(1 - L * L)
        ok = ok and report.crossing.scalar == str(L * (-L - n))
    c.finish(ok)


def test_criterion_07_twist():
    c = _Criterion(7, "F/G twist identities for every involutive "
                      "non-degenerate solution of size <= 4", 60)
    ok = True
    for sol in _involutive_solutions(4):
        _, report = build_and_check_twist(linearize(sol))
        ok = ok and report.passed
    c.finish(ok)


def test_criterion_08_rtt_series():
    c = _Criterion(8, "fundamental L passes the RTT orders n,m <= 3 on every "
                      "involutive solution of size <= 3; modes agree; flip "
                      "reproduces the Yangian bracket", 60)
    ok = True
    for sol in _involutive_solutions(3):
        lin = linearize(sol)
        report = check_rtt_series(lin, fundamental_l_series(lin), max_order=3)
        ok = ok and report.passed and report.modes_agree
    flip = linearize(SetSolution.flip(2))
    flip_report = check_rtt_series(flip, fundamental_l_series(flip), max_order=3)
    ok = ok and flip_report.yangian_form_ok is True
    c.finish(ok)


def test_criterion_09_reflections():
    c = _Criterion(9, "identity passes cc1; direct iff cc1 over all N^N maps "
                      "at N <= 3; tau-equivariant and central maps pass", 60)
    ok = True
    for sol in _involutive_solutions(3):
        n = sol.n
        ok = ok and verify_reflection(sol, ReflectionMap(range(n)), "cc1").passed
        for table in itertools.product(range(n), repeat=n):
            k = ReflectionMap(table)
            direct = verify_reflection(sol, k, "direct").passed
            cc1 = verify_reflection(sol, k, "cc1").passed
            ok = ok and direct == cc1
            if all(k(sol.tau[y][x]) == sol.tau[y][k(x)]
                   for x in range(n) for y in range(n)):
                ok = ok and direct
    for n in range(1, 5):
        for nb in enumerate_near_braces(n, "left_brace", canonical=True):
            sol = solution_from_structure(nb, "rump")
            for cen in central_elements(nb):
                k = ReflectionMap(sol.tau[cen])
                ok = ok and verify_reflection(sol, k, "direct").passed
    c.finish(ok)


def test_criterion_10_reflection_algebra():
    c = _Criterion(10, "dressed K (K0=I) passes RE3 for size <= 3; its mu-series "
                       "passes the exchange relations at all accessible orders "
                       "and rela1; corruption of K^(1) is detected", 300)
    ok = True
    witnessed = False
    for sol in _involutive_solutions(3):
        lin = linearize(sol)
        dressed = dress_reflection(lin)
        ok = ok and check_reflection_equation(lin, dressed.kmatrix).passed
        series = series_from_polymatrix(dressed.kmatrix)
        report = check_reflection_algebra(lin, series)
        ok = ok and report.passed and report.rela1_ok
        if sol.n == 1:
            # everything commutes in one dimension: corruption undetectable
            continue
        # corrupt K^(1) and require a concrete witness
        k1 = PolyMatrix(series.coeffs[1].slots, dict(series.coeffs[1].entries))
        k1.entries[(0, 0)] = k1.entries.get((0, 0), Poly.zero()) + 1
        bad = SeriesOperator(series.slots,
                             (series.coeffs[0], k1) + series.coeffs[2:],
                             exact=True)
        bad_report = check_reflection_algebra(lin, bad, max_order=2)
        if not bad_report.passed:
            failing = [v for v in bad_report.orders if not v.matrix_ok]
            witnessed = witnessed or (bool(failing) and
                                      failing[0].witness is not None) or \
                not bad_report.rela1_ok
            ok = ok and (not failing or failing[0].witness is not None)
        else:
            ok = False
    c.finish(ok and witnessed)


def test_criterion_11_determinism(capsys, tmp_path, z4_brace):
    c = _Criterion(11, "repeated runs give byte-identical reports modulo "
                       "the timing field", 60)
    sol = solution_from_structure(z4_brace, "rump")
    sol_path = tmp_path / "sol.json"
    sol_path.write_text(json.dumps(sol.to_json()))
    brace_path = tmp_path / "brace.json"
    brace_path.write_text(json.dumps(z4_brace.to_json()))

    def run(argv):
        code = cli_main(argv)
        out = capsys.readouterr().out
        lines = [ln for ln in out.splitlines() if "timing_ms" not in ln]
        return code, "\n".join(lines)

    ok = True
    for argv in (
        ["verify-structure", "--input", str(brace_path)],
        ["verify-braid", "--input", str(sol_path)],
        ["check-r", "--input", str(sol_path)],
        ["check-re", "--input", str(sol_path)],
        ["enumerate-braces", "--size", "4", "--level", "left_brace",
         "--canonical"],
        ["enumerate-solutions", "--size", "3", "--involutive", "--canonical"],
    ):
        first = run(argv)
        second = run(argv)
        ok = ok and first == second and first[0] == 0
    c.finish(ok)
