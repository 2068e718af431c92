"""Set-theoretic solutions of the braid equation and their diagnostics.

Conventions: a solution stores sigma[x][y] = sigma_x(y) and
tau[y][x] = tau_y(x), both as N x N index tables; the map itself is
r(x, y) = (sigma_x(y), tau_y(x)).
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .algebra import (BoundExceeded, GroupTable, NearBrace, StructuralError,
                      _check_table, relabel_table, verify_structure)

RULES = ("rump", "gv", "near")

DEFAULT_EXHAUSTIVE_BOUND = 3
DEFAULT_INVOLUTIVE_BOUND = 4


class LevelMismatch(ValueError):
    """The structure does not satisfy the axioms the rule requires."""


@dataclass(frozen=True)
class SetSolution:
    n: int
    sigma: tuple
    tau: tuple

    def __init__(self, n: int, sigma: Sequence[Sequence[int]],
                 tau: Sequence[Sequence[int]]):
        _check_table(sigma, n, "sigma")
        _check_table(tau, n, "tau")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "sigma", tuple(tuple(r) for r in sigma))
        object.__setattr__(self, "tau", tuple(tuple(r) for r in tau))

    def r(self, x: int, y: int) -> tuple:
        return self.sigma[x][y], self.tau[y][x]

    @staticmethod
    def flip(n: int) -> "SetSolution":
        idrow = tuple(range(n))
        return SetSolution(n, [idrow] * n, [idrow] * n)

    def to_json(self) -> dict:
        return {"size": self.n, "sigma": [list(r) for r in self.sigma],
                "tau": [list(r) for r in self.tau]}

    @staticmethod
    def from_json(obj: dict) -> "SetSolution":
        return SetSolution(obj["size"], obj["sigma"], obj["tau"])


@dataclass
class BraidReport:
    direct_ok: bool
    direct_witness: tuple | None
    c1: tuple  # (ok, witness)
    c2: tuple
    c3: tuple
    methods_agree: bool

    @property
    def passed(self) -> bool:
        return self.direct_ok

    def to_json(self) -> dict:
        def con(pair):
            ok, w = pair
            return {"ok": ok, "witness": list(w) if w else None}
        return {"direct_ok": self.direct_ok,
                "direct_witness": list(self.direct_witness) if self.direct_witness else None,
                "c1": con(self.c1), "c2": con(self.c2), "c3": con(self.c3),
                "methods_agree": self.methods_agree}


@dataclass
class SolutionDiagnostics:
    non_degenerate: bool
    involutive: bool
    invertible: bool
    sigma_hat: tuple | None
    tau_hat: tuple | None
    ide1_ok: bool | None
    mapzz2_form_ok: bool | None

    def to_json(self) -> dict:
        return {"non_degenerate": self.non_degenerate,
                "involutive": self.involutive,
                "invertible": self.invertible,
                "sigma_hat": [list(r) for r in self.sigma_hat] if self.sigma_hat else None,
                "tau_hat": [list(r) for r in self.tau_hat] if self.tau_hat else None,
                "ide1_ok": self.ide1_ok,
                "mapzz2_form_ok": self.mapzz2_form_ok}


@dataclass
class AdditionReport:
    add_table: tuple
    associative: bool
    group: bool
    abelian: bool
    distributivity_ok: bool
    phi_table: tuple | None
    round_trip_ok: bool | None

    def to_json(self) -> dict:
        return {"add_table": [list(r) for r in self.add_table],
                "associative": self.associative, "group": self.group,
                "abelian": self.abelian,
                "distributivity_ok": self.distributivity_ok,
                "phi_table": list(self.phi_table) if self.phi_table else None,
                "round_trip_ok": self.round_trip_ok}


# -- constructions ---------------------------------------------------------

def solution_from_structure(nb: NearBrace, rule: str) -> SetSolution:
    """Build the solution the given rule assigns to the structure.

    rump needs a left brace (sigma_x(y) = x.y - x); gv a (left) skew brace
    (sigma_a(b) = -a + a.b); near a near brace (sigma_a(b) = a.b - a.0 + 1).
    In all cases tau_b(a) = sigma_a(b)^{-1} . a . b using the circle inverse.
    """
    if rule not in RULES:
        raise StructuralError(f"unknown rule {rule!r}")
    if rule == "rump":
        report = verify_structure(nb, "left_brace")
        if not report.valid:
            raise LevelMismatch(f"rump rule needs a left brace; failed: {report.failures[0]}")
    elif rule == "gv":
        report = verify_structure(nb, "skew_brace")
        if not report.valid:
            report_lb = verify_structure(nb, "left_brace")
            if not report_lb.valid:
                raise LevelMismatch(
                    f"gv rule needs a skew brace or left brace; failed: {report.failures[0]}")
    else:
        report = verify_structure(nb, "near_brace")
        if not report.valid:
            raise LevelMismatch(f"near rule needs a near brace; failed: {report.failures[0]}")

    n, add, mul = nb.n, nb.add, nb.mul
    neg = add.inverses()
    minv = mul.inverses()
    zero, one = nb.zero, nb.one

    sigma = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            ab = mul(a, b)
            if rule == "rump":
                sigma[a][b] = add(ab, neg[a])
            elif rule == "gv":
                sigma[a][b] = add(neg[a], ab)
            else:
                sigma[a][b] = add(add(ab, neg[mul(a, zero)]), one)
    tau = [[0] * n for _ in range(n)]
    for b in range(n):
        for a in range(n):
            tau[b][a] = mul(mul(minv[sigma[a][b]], a), b)
    return SetSolution(n, sigma, tau)


# -- verification ----------------------------------------------------------

def verify_braid(sol: SetSolution) -> BraidReport:
    """Check the braid identity over all triples, both by direct composition
    and through the three constraint equations; the two routes must agree."""
    n, s, t = sol.n, sol.sigma, sol.tau
    direct_witness = None
    c1w = c2w = c3w = None
    for eta, x, y in itertools.product(range(n), repeat=3):
        # (r x id)(id x r)(r x id)
        a1, a2 = s[eta][x], t[x][eta]
        b2, b3 = s[a2][y], t[y][a2]
        l1, l2 = s[a1][b2], t[b2][a1]
        left = (l1, l2, b3)
        # (id x r)(r x id)(id x r)
        p2, p3 = s[x][y], t[y][x]
        q1, q2 = s[eta][p2], t[p2][eta]
        r2, r3 = s[q2][p3], t[p3][q2]
        right = (q1, r2, r3)
        if direct_witness is None and left != right:
            direct_witness = (eta, x, y)
        if c1w is None and s[eta][s[x][y]] != s[s[eta][x]][s[t[x][eta]][y]]:
            c1w = (eta, x, y)
        if c2w is None and t[y][t[x][eta]] != t[t[y][x]][t[s[x][y]][eta]]:
            c2w = (eta, x, y)
        if c3w is None and t[s[t[x][eta]][y]][s[eta][x]] != s[t[s[x][y]][eta]][t[y][x]]:
            c3w = (eta, x, y)
    constraints_ok = c1w is None and c2w is None and c3w is None
    return BraidReport(
        direct_ok=direct_witness is None,
        direct_witness=direct_witness,
        c1=(c1w is None, c1w), c2=(c2w is None, c2w), c3=(c3w is None, c3w),
        methods_agree=(direct_witness is None) == constraints_ok,
    )


def _is_perm(row: Sequence[int]) -> bool:
    return len(set(row)) == len(row)


def diagnostics(sol: SetSolution, mul: GroupTable | None = None) -> SolutionDiagnostics:
    """Non-degeneracy, involutivity and the inverse maps with their identities."""
    n, s, t = sol.n, sol.sigma, sol.tau
    non_deg = all(_is_perm(s[x]) for x in range(n)) and \
        all(_is_perm(t[y]) for y in range(n))
    involutive = all(sol.r(*sol.r(x, y)) == (x, y)
                     for x in range(n) for y in range(n))

    image = {}
    invertible = True
    for x in range(n):
        for y in range(n):
            key = sol.r(x, y)
            if key in image:
                invertible = False
            image[key] = (x, y)
    sigma_hat = tau_hat = None
    ide1_ok = None
    mapzz2_ok = None
    if invertible and len(image) == n * n:
        sh = [[0] * n for _ in range(n)]
        th = [[0] * n for _ in range(n)]
        for (u, v), (x, y) in image.items():
            sh[u][v] = x   # r^{-1}(u, v) = (sigma_hat_u(v), tau_hat_v(u))
            th[v][u] = y
        sigma_hat = tuple(tuple(r) for r in sh)
        tau_hat = tuple(tuple(r) for r in th)
        ide1_ok = all(
            s[sh[x][y]][th[y][x]] == x and
            sh[s[x][y]][t[y][x]] == x and
            t[th[y][x]][sh[x][y]] == y and
            th[t[y][x]][s[x][y]] == y
            for x in range(n) for y in range(n))
        if mul is not None:
            if mul.n != n or not mul.is_group():
                raise StructuralError("mul must be a group on the same set")
            minv = mul.inverses()
            add = _addition_table(sol, mul)
            mapzz2_ok = all(
                sh[x][y] == mul(x, add[minv[x]][y])
                for x in range(n) for y in range(n))
    else:
        invertible = False
    return SolutionDiagnostics(non_deg, involutive, invertible,
                               sigma_hat, tau_hat, ide1_ok, mapzz2_ok)


def _addition_table(sol: SetSolution, mul: GroupTable):
    """add[p][q] = p + q with y + x := x . sigma_{x^{-1}}(y)."""
    n = sol.n
    minv = mul.inverses()
    return [[mul(q, sol.sigma[minv[q]][p]) for q in range(n)] for p in range(n)]


def reconstruct_addition(sol: SetSolution, mul: GroupTable) -> AdditionReport:
    """Rebuild the candidate addition from sigma and a supplied circle group,
    and report which near-brace axioms it satisfies."""
    if mul.n != sol.n or not mul.is_group():
        raise StructuralError("mul must be a group on the same set")
    n = sol.n
    add_rows = _addition_table(sol, mul)
    add = GroupTable(n, add_rows)
    associative = all(
        add(add(a, b), c) == add(a, add(b, c))
        for a, b, c in itertools.product(range(n), repeat=3))
    group = associative and add.is_group()
    abelian = group and add.is_abelian()
    distributivity_ok = False
    phi_table = None
    round_trip_ok = None
    if group:
        zero = add.identity()
        neg = add.inverses()
        distributivity_ok = all(
            mul(a, add(b, c)) == add(add(mul(a, b), neg[mul(a, zero)]), mul(a, c))
            for a, b, c in itertools.product(range(n), repeat=3))
        if distributivity_ok:
            phi_table = tuple(neg[mul(a, zero)] for a in range(n))
            nb = NearBrace(n, add, mul, "near_brace")
            round_trip_ok = solution_from_structure(nb, "near") == sol
    return AdditionReport(tuple(tuple(r) for r in add_rows), associative,
                          group, abelian, distributivity_ok, phi_table,
                          round_trip_ok)


# -- enumeration -----------------------------------------------------------

def canonical_solution_key(sol: SetSolution) -> tuple:
    """Minimal (sigma, tau) pair over relabelings of the underlying set."""
    best = None
    for pi in itertools.permutations(range(sol.n)):
        cand = (relabel_table(sol.sigma, pi), relabel_table(sol.tau, pi))
        if best is None or cand < best:
            best = cand
    return best


def _perm_tables(n: int):
    perms = sorted(itertools.permutations(range(n)))
    return list(itertools.product(perms, repeat=n))


def _involutive_from_sigma(n: int, sigma) -> SetSolution | None:
    """Derive tau from involutivity: tau_y(x) = sigma^{-1}_{sigma_x(y)}(x)."""
    inv_rows = []
    for row in sigma:
        inv = [0] * n
        for i, v in enumerate(row):
            inv[v] = i
        inv_rows.append(inv)
    tau = [[0] * n for _ in range(n)]
    for y in range(n):
        for x in range(n):
            tau[y][x] = inv_rows[sigma[x][y]][x]
        if not _is_perm(tau[y]):
            return None
    sol = SetSolution(n, sigma, tau)
    for x in range(n):
        for y in range(n):
            if sol.r(*sol.r(x, y)) != (x, y):
                return None
    return sol


def _scan_involutive(n: int, first_rows) -> list:
    perms = sorted(itertools.permutations(range(n)))
    found = []
    for first in first_rows:
        for rest in itertools.product(perms, repeat=n - 1):
            sigma = (first,) + rest
            sol = _involutive_from_sigma(n, sigma)
            if sol is None:
                continue
            if verify_braid(sol).direct_ok:
                found.append(sol)
    return found


def _scan_involutive_worker(args):
    return _scan_involutive(*args)


def enumerate_solutions(n: int, involutive: bool = False,
                        non_degenerate: bool = True,
                        canonical: bool = False,
                        bound: int | None = None,
                        jobs: int = 1) -> Iterator[SetSolution]:
    """Exhaustively enumerate non-degenerate braid-equation solutions.

    sigma and tau rows range over permutations of 0..n-1.  With the
    involutive flag, tau is determined by sigma and the scan covers sigma
    tables only, which keeps n = 4 tractable; the general scan prunes tau
    through the sigma-composition constraint and is bounded at n = 3 by
    default.
    """
    if not non_degenerate:
        raise BoundExceeded("only non-degenerate enumeration is supported")
    if bound is None:
        bound = DEFAULT_INVOLUTIVE_BOUND if involutive else DEFAULT_EXHAUSTIVE_BOUND
    if n > bound:
        raise BoundExceeded(f"size {n} exceeds bound {bound}")

    seen = set()

    def emit(sol):
        if canonical:
            key = canonical_solution_key(sol)
            if key in seen:
                return None
            seen.add(key)
        return sol

    perms = sorted(itertools.permutations(range(n)))
    if involutive:
        if jobs > 1 and n >= 3:
            chunks = [(n, [p]) for p in perms]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for batch in pool.map(_scan_involutive_worker, chunks):
                    for sol in batch:
                        out = emit(sol)
                        if out is not None:
                            yield out
        else:
            for sol in _scan_involutive(n, perms):
                out = emit(sol)
                if out is not None:
                    yield out
        return

    perm_index = {p: i for i, p in enumerate(perms)}
    compose = [[perm_index[tuple(p[q[i]] for i in range(n))]
                for q in perms] for p in perms]
    inverse = [perm_index[tuple(sorted(range(n), key=p.__getitem__))]
               for p in perms]
    for sigma in itertools.product(perms, repeat=n):
        srow = [perm_index[row] for row in sigma]
        # C1 pins sigma_{tau_x(eta)} = sigma_{sigma_eta(x)}^{-1} sigma_eta sigma_x;
        # collect the admissible values of tau_x(eta) before scanning tau.
        candidates = [[None] * n for _ in range(n)]
        feasible = True
        for x in range(n):
            for eta in range(n):
                target = compose[inverse[srow[sigma[eta][x]]]][
                    compose[srow[eta]][srow[x]]]
                opts = [tt for tt in range(n) if srow[tt] == target]
                if not opts:
                    feasible = False
                    break
                candidates[x][eta] = opts
            if not feasible:
                break
        if not feasible:
            continue
        for tau_choice in itertools.product(
                *(itertools.product(*candidates[x]) for x in range(n))):
            # tau_choice[x][eta] = tau_x(eta); table rows are tau_y.
            tau = tuple(tau_choice[x] for x in range(n))
            if not all(_is_perm(row) for row in tau):
                continue
            sol = SetSolution(n, sigma, tau)
            if not verify_braid(sol).direct_ok:
                continue
            out = emit(sol)
            if out is not None:
                yield out


def solutions_from_braces(n: int, level: str = "left_brace",
                          rule: str = "rump", canonical: bool = False,
                          bound: int | None = None) -> Iterator[SetSolution]:
    """Brace-generated mode: map enumerated structures through the rule."""
    from .algebra import enumerate_near_braces
    seen = set()
    for nb in enumerate_near_braces(n, level, canonical=False, bound=bound):
        sol = solution_from_structure(nb, rule)
        if canonical:
            key = canonical_solution_key(sol)
            if key in seen:
                continue
            seen.add(key)
        yield sol
