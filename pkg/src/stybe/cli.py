"""Command-line front end.

Every verification subcommand prints a single JSON report on stdout and
exits 0 when all checks pass, 1 when a mathematical check failed (the report
carries the witnesses), and 2 on malformed input or usage errors.
Enumeration subcommands stream one JSON object per line.  Reports are
deterministic apart from the timing_ms field; --figures renders PNG
summaries next to the JSON output.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__, figures
from .algebra import (BoundExceeded, GroupTable, NearBrace, NotRadicalRing,
                      RingTable, StructuralError, brace_from_radical_ring,
                      enumerate_near_braces, verify_structure, LEVELS)
from .polymat import PolyMatrix
from .qalgebra import (DressParams, SeriesOperator, check_reflection_algebra,
                       check_reflection_equation, check_rtt_series,
                       coproduct_reflection_check, coproduct_rtt_check,
                       dress_reflection, fundamental_l_series,
                       series_from_polymatrix)
from .reflection import (FILTERS, MODES, ReflectionMap, enumerate_reflections,
                         verify_reflection)
from .reflection import HypothesisNotMet as ReflectionHypothesisNotMet
from .rmatrix import (HypothesisNotMet, build_and_check_twist,
                      check_basic_properties, linearize)
from .ybe import (LevelMismatch, RULES, SetSolution, diagnostics,
                  enumerate_solutions, reconstruct_addition,
                  solution_from_structure, solutions_from_braces, verify_braid)

_USAGE_ERRORS = (StructuralError, BoundExceeded, HypothesisNotMet,
                 ReflectionHypothesisNotMet)


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _load(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


class _Reporter:
    """Collects inputs and verdicts, then writes the run report."""

    def __init__(self, args, command: str):
        self.args = args
        self.command = command
        self.inputs: dict = {}
        self.start = time.monotonic()

    def load(self, path: str) -> dict:
        obj = _load(path)
        self.inputs[path] = _digest(path)
        return obj

    def emit(self, verdicts: dict, passed: bool) -> int:
        report = {
            "command": self.command,
            "version": __version__,
            "inputs": self.inputs,
            "verdicts": verdicts,
            "passed": passed,
            "timing_ms": round((time.monotonic() - self.start) * 1000, 3),
        }
        text = json.dumps(report, sort_keys=True, indent=2)
        print(text)
        out = getattr(self.args, "output", None)
        if out:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        return 0 if passed else 1


def _stream(args, objects) -> int:
    out = getattr(args, "output", None)
    fh = open(out, "w", encoding="utf-8") if out else sys.stdout
    try:
        for obj in objects:
            fh.write(json.dumps(obj, sort_keys=True) + "\n")
    finally:
        if out:
            fh.close()
    return 0


def _figdir(args) -> str | None:
    return getattr(args, "figures", None)


def _jobs(args) -> int:
    if args.jobs is not None:
        return args.jobs
    return int(os.environ.get("STYBE_JOBS", "1"))


def _nearbrace(obj: dict) -> NearBrace:
    return NearBrace.from_json(obj)


def _solution(obj: dict) -> SetSolution:
    return SetSolution.from_json(obj)


# -- structure subcommands --------------------------------------------------

def _cmd_verify_structure(args) -> int:
    rep = _Reporter(args, "verify-structure")
    nb = _nearbrace(rep.load(args.input))
    level = args.level or nb.kind
    result = verify_structure(nb, level)
    verdicts = {"level": level, "report": result.to_json()}
    if _figdir(args):
        verdicts["figures"] = [figures.brace_tables(
            nb.add.op, nb.mul.op, _figdir(args), "structure")]
    return rep.emit(verdicts, result.valid)


def _cmd_from_radical_ring(args) -> int:
    rep = _Reporter(args, "from-radical-ring")
    obj = rep.load(args.input)
    n = obj["size"]
    ring = RingTable(n, GroupTable(n, obj["add"]), obj["times"])
    failures = ring.ring_failures()
    if failures:
        axiom, witness = failures[0]
        return rep.emit({"error": "not a ring",
                         "failure": {"axiom": axiom, "witness": list(witness)}},
                        False)
    try:
        nb = brace_from_radical_ring(ring)
    except NotRadicalRing as exc:
        return rep.emit({"error": str(exc), "element": exc.element}, False)
    verdicts = {"structure": nb.to_json(),
                "report": verify_structure(nb, "left_brace").to_json()}
    if _figdir(args):
        verdicts["figures"] = [figures.brace_tables(
            nb.add.op, nb.mul.op, _figdir(args), "structure")]
    return rep.emit(verdicts, True)


def _cmd_enumerate_braces(args) -> int:
    gen = enumerate_near_braces(args.size, args.level,
                                canonical=args.canonical, bound=args.bound)
    return _stream(args, (nb.to_json() for nb in gen))


# -- solution subcommands ---------------------------------------------------

def _cmd_make_solution(args) -> int:
    rep = _Reporter(args, "make-solution")
    nb = _nearbrace(rep.load(args.input))
    try:
        sol = solution_from_structure(nb, args.rule)
    except LevelMismatch as exc:
        return rep.emit({"error": str(exc), "rule": args.rule}, False)
    verdicts = {"rule": args.rule, "solution": sol.to_json(),
                "braid": verify_braid(sol).to_json()}
    if _figdir(args):
        verdicts["figures"] = [figures.solution_tables(
            sol, _figdir(args), "solution")]
    return rep.emit(verdicts, True)


def _cmd_verify_braid(args) -> int:
    rep = _Reporter(args, "verify-braid")
    sol = _solution(rep.load(args.input))
    result = verify_braid(sol)
    verdicts = {"report": result.to_json()}
    if _figdir(args):
        verdicts["figures"] = [figures.solution_tables(
            sol, _figdir(args), "solution")]
    return rep.emit(verdicts, result.passed)


def _cmd_diagnose(args) -> int:
    rep = _Reporter(args, "diagnose")
    sol = _solution(rep.load(args.input))
    mul = None
    if args.structure:
        mul = _nearbrace(rep.load(args.structure)).mul
    diag = diagnostics(sol, mul)
    passed = diag.ide1_ok is not False and diag.mapzz2_form_ok is not False
    return rep.emit({"report": diag.to_json()}, passed)


def _cmd_reconstruct_add(args) -> int:
    rep = _Reporter(args, "reconstruct-add")
    sol = _solution(rep.load(args.input))
    obj = rep.load(args.structure)
    mul = GroupTable(obj["size"], obj["mul"]) if "mul" in obj \
        else GroupTable(obj["size"], obj["op"])
    result = reconstruct_addition(sol, mul)
    passed = result.group and result.distributivity_ok and \
        result.round_trip_ok is not False
    return rep.emit({"report": result.to_json()}, passed)


def _cmd_enumerate_solutions(args) -> int:
    if args.from_braces:
        gen = solutions_from_braces(args.size, args.level, args.rule,
                                    canonical=args.canonical, bound=args.bound)
    else:
        gen = enumerate_solutions(args.size, involutive=args.involutive,
                                  canonical=args.canonical, bound=args.bound,
                                  jobs=_jobs(args))
    return _stream(args, (sol.to_json() for sol in gen))


# -- reflection subcommands -------------------------------------------------

def _cmd_verify_reflection(args) -> int:
    rep = _Reporter(args, "verify-reflection")
    sol = _solution(rep.load(args.input))
    k = ReflectionMap.from_json(rep.load(args.k))
    result = verify_reflection(sol, k, mode=args.mode)
    return rep.emit({"report": result.to_json()}, result.passed)


def _cmd_enumerate_reflections(args) -> int:
    sol = _solution(_load(args.input))
    nb = _nearbrace(_load(args.structure)) if args.structure else None
    gen = enumerate_reflections(sol, filter=args.filter, nb=nb,
                                bound=args.bound)
    return _stream(args, (k.to_json() for k in gen))


# -- matrix subcommands -----------------------------------------------------

def _cmd_linearize(args) -> int:
    rep = _Reporter(args, "linearize")
    sol = _solution(rep.load(args.input))
    lin = linearize(sol)
    verdicts = {"r_check": lin.r_check.to_json(), "r": lin.r.to_json(),
                "involutive": lin.involutive}
    if _figdir(args):
        verdicts["figures"] = [
            figures.matrix_sparsity(lin.r_check, _figdir(args), "r_check"),
            figures.matrix_sparsity(lin.r, _figdir(args), "r"),
        ]
    return rep.emit(verdicts, True)


def _cmd_check_r(args) -> int:
    rep = _Reporter(args, "check-r")
    sol = _solution(rep.load(args.input))
    lin = linearize(sol)
    result = check_basic_properties(lin)
    verdicts = {"involutive": lin.involutive, "report": result.to_json()}
    if _figdir(args):
        verdicts["figures"] = [
            figures.matrix_sparsity(lin.r_check, _figdir(args), "r_check")]
    return rep.emit(verdicts, result.passed)


def _cmd_twist(args) -> int:
    rep = _Reporter(args, "twist")
    sol = _solution(rep.load(args.input))
    lin = linearize(sol)
    pair, result = build_and_check_twist(lin)
    verdicts = {"F": pair.F.to_json(), "G": pair.G.to_json(),
                "f_invertible": pair.f_invertible,
                "g_invertible": pair.g_invertible,
                "report": result.to_json()}
    if _figdir(args):
        verdicts["figures"] = [
            figures.matrix_sparsity(pair.F, _figdir(args), "twist_f"),
            figures.matrix_sparsity(pair.G, _figdir(args), "twist_g"),
        ]
    return rep.emit(verdicts, result.passed)


# -- series subcommands -----------------------------------------------------

def _series_arg(rep: _Reporter, args, lin) -> SeriesOperator:
    if getattr(args, "series", None):
        return SeriesOperator.from_json(rep.load(args.series))
    return fundamental_l_series(lin)


def _dress_params(rep: _Reporter, args) -> DressParams:
    theta = args.theta
    if theta not in (None, "symbolic"):
        theta = Fraction(theta)
    k0 = None
    if getattr(args, "k0", None):
        k0 = PolyMatrix.from_json(rep.load(args.k0))
    return DressParams(k0=k0, theta=theta)


def _cmd_check_rtt(args) -> int:
    rep = _Reporter(args, "check-rtt")
    sol = _solution(rep.load(args.input))
    lin = linearize(sol)
    series = _series_arg(rep, args, lin)
    if args.coproduct:
        result = coproduct_rtt_check(lin, series, max_order=args.max_order)
    else:
        result = check_rtt_series(lin, series, max_order=args.max_order)
    return rep.emit({"coproduct": args.coproduct, "report": result.to_json()},
                    result.passed)


def _cmd_dress_k(args) -> int:
    rep = _Reporter(args, "dress-k")
    sol = _solution(rep.load(args.input))
    lin = linearize(sol)
    result = dress_reflection(lin, _dress_params(rep, args))
    verdicts = {"result": result.to_json()}
    if _figdir(args):
        verdicts["figures"] = [
            figures.matrix_sparsity(result.kmatrix, _figdir(args), "dressed_k")]
    return rep.emit(verdicts, True)


def _cmd_check_re(args) -> int:
    rep = _Reporter(args, "check-re")
    sol = _solution(rep.load(args.input))
    lin = linearize(sol)
    if args.coproduct:
        result = coproduct_reflection_check(lin, _dress_params(rep, args))
        return rep.emit({"coproduct": True, "report": result.to_json()},
                        result.passed)
    if args.kmatrix:
        kmatrix = PolyMatrix.from_json(rep.load(args.kmatrix))
    else:
        kmatrix = dress_reflection(lin, _dress_params(rep, args)).kmatrix
    result = check_reflection_equation(lin, kmatrix,
                                       constant_mode=args.constant)
    return rep.emit({"coproduct": False, "report": result.to_json()},
                    result.passed)


def _cmd_check_ra(args) -> int:
    rep = _Reporter(args, "check-ra")
    sol = _solution(rep.load(args.input))
    lin = linearize(sol)
    if args.series:
        series = SeriesOperator.from_json(rep.load(args.series))
    else:
        dressed = dress_reflection(lin, _dress_params(rep, args))
        series = series_from_polymatrix(dressed.kmatrix, exact=True)
    result = check_reflection_algebra(lin, series, max_order=args.max_order)
    return rep.emit({"report": result.to_json()}, result.passed)


# -- parser -----------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stybe",
        description="Exact checks for set-theoretic Yang-Baxter and "
                    "reflection structures")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **notes):
        p = sub.add_parser(name, help=notes.pop("help", None))
        p.set_defaults(func=func)
        p.add_argument("--output", help="also write the report/stream here")
        p.add_argument("--figures", metavar="DIR",
                       help="render PNG figures into this directory")
        p.add_argument("--jobs", type=int, default=None,
                       help="worker processes (default: STYBE_JOBS or 1)")
        return p

    p = add("verify-structure", _cmd_verify_structure,
            help="check brace/near-brace axioms of a structure file")
    p.add_argument("--input", required=True)
    p.add_argument("--level", choices=LEVELS, default=None)

    p = add("from-radical-ring", _cmd_from_radical_ring,
            help="build the left brace of a radical ring")
    p.add_argument("--input", required=True)

    p = add("enumerate-braces", _cmd_enumerate_braces,
            help="stream all structures of a level and size")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--level", choices=LEVELS, default="left_brace")
    p.add_argument("--canonical", action="store_true")
    p.add_argument("--bound", type=int, default=None)

    p = add("make-solution", _cmd_make_solution,
            help="build the braid-equation solution of a structure")
    p.add_argument("--input", required=True)
    p.add_argument("--rule", choices=RULES, default="rump")

    p = add("verify-braid", _cmd_verify_braid,
            help="check the braid identity of a solution file")
    p.add_argument("--input", required=True)

    p = add("diagnose", _cmd_diagnose,
            help="non-degeneracy, involutivity, invertibility, inverse maps")
    p.add_argument("--input", required=True)
    p.add_argument("--structure", help="structure file supplying the circle group")

    p = add("reconstruct-add", _cmd_reconstruct_add,
            help="rebuild the addition from sigma and a circle group")
    p.add_argument("--input", required=True)
    p.add_argument("--structure", required=True,
                   help="structure or group file supplying the circle group")

    p = add("enumerate-solutions", _cmd_enumerate_solutions,
            help="stream non-degenerate solutions of a given size")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--involutive", action="store_true")
    p.add_argument("--canonical", action="store_true")
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--from-braces", action="store_true",
                   help="generate from enumerated structures instead")
    p.add_argument("--level", choices=LEVELS, default="left_brace")
    p.add_argument("--rule", choices=RULES, default="rump")

    p = add("verify-reflection", _cmd_verify_reflection,
            help="check a reflection map against a solution")
    p.add_argument("--input", required=True)
    p.add_argument("--k", required=True, help="reflection map file")
    p.add_argument("--mode", choices=MODES, default="direct")

    p = add("enumerate-reflections", _cmd_enumerate_reflections,
            help="stream reflections of a solution")
    p.add_argument("--input", required=True)
    p.add_argument("--filter", choices=FILTERS, default="all")
    p.add_argument("--structure", help="structure file (for filter=central)")
    p.add_argument("--bound", type=int, default=6)

    p = add("linearize", _cmd_linearize,
            help="matrix form of a solution and its permutation partner")
    p.add_argument("--input", required=True)

    p = add("check-r", _cmd_check_r,
            help="braid, unitarity, crossing and transpose identities")
    p.add_argument("--input", required=True)

    p = add("twist", _cmd_twist,
            help="build the twist pair and verify its identities")
    p.add_argument("--input", required=True)

    p = add("check-rtt", _cmd_check_rtt,
            help="order-by-order RTT relation of a series representation")
    p.add_argument("--input", required=True)
    p.add_argument("--series", help="series file (default: fundamental)")
    p.add_argument("--max-order", type=int, default=3)
    p.add_argument("--coproduct", action="store_true",
                   help="check again with one extra quantum site")

    p = add("dress-k", _cmd_dress_k,
            help="dress a c-number boundary matrix")
    p.add_argument("--input", required=True)
    p.add_argument("--theta", default=None,
                   help="boundary parameter: rational or 'symbolic' (default 0)")
    p.add_argument("--k0", help="boundary matrix file (default identity)")

    p = add("check-re", _cmd_check_re,
            help="braid-form reflection equation for a K matrix")
    p.add_argument("--input", required=True)
    p.add_argument("--kmatrix", help="K matrix file (default: dressed identity)")
    p.add_argument("--theta", default=None)
    p.add_argument("--k0")
    p.add_argument("--constant", action="store_true",
                   help="drop the spectral parameters")
    p.add_argument("--coproduct", action="store_true",
                   help="check with one extra dressing site")

    p = add("check-ra", _cmd_check_ra,
            help="reflection-algebra exchange relations of a K series")
    p.add_argument("--input", required=True)
    p.add_argument("--series", help="K series file (default: dressed identity)")
    p.add_argument("--max-order", type=int, default=None)
    p.add_argument("--theta", default=None)
    p.add_argument("--k0")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        print(f"error: {exc!r}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
