"""Linearized solutions, Baxterization, matrix identities and the twist.

Everything here is exact: identities hold or fail as polynomial matrix
equations, never numerically.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poly import L, L1, L2, Poly
from .polymat import PolyMatrix
from .ybe import SetSolution, diagnostics


class HypothesisNotMet(ValueError):
    """Identity requested outside the hypotheses it was stated for."""


@dataclass(frozen=True)
class LinearSolution:
    source: SetSolution
    r_check: PolyMatrix   # constant 0/1 matrix of the set map
    r: PolyMatrix         # P . r_check
    n: int

    @property
    def involutive(self) -> bool:
        return (self.r_check @ self.r_check) == PolyMatrix.identity([self.n, self.n])


@dataclass(frozen=True)
class Baxterized:
    r_check_lambda: PolyMatrix   # lambda * rcheck + I
    r_lambda: PolyMatrix         # P . (lambda * rcheck + I)


@dataclass(frozen=True)
class TwistPair:
    F: PolyMatrix
    G: PolyMatrix
    f_invertible: bool
    g_invertible: bool


@dataclass
class PropertyResult:
    status: str                  # "pass" | "fail" | "not_applicable"
    scalar: str | None = None
    witness: list | None = None

    def to_json(self) -> dict:
        return {"status": self.status, "scalar": self.scalar,
                "witness": self.witness}


@dataclass
class BasicPropertiesReport:
    constant_braid: PropertyResult
    ybe: PropertyResult
    unitarity: PropertyResult
    crossing: PropertyResult
    transpose_symmetry: PropertyResult

    @property
    def passed(self) -> bool:
        return all(res.status != "fail" for res in (
            self.constant_braid, self.ybe, self.unitarity, self.crossing,
            self.transpose_symmetry))

    def to_json(self) -> dict:
        return {"constant_braid": self.constant_braid.to_json(),
                "ybe": self.ybe.to_json(), "unitarity": self.unitarity.to_json(),
                "crossing": self.crossing.to_json(),
                "transpose_symmetry": self.transpose_symmetry.to_json()}


@dataclass
class TwistReport:
    conjugates_flip: bool        # rcheck = F^{-1} P F
    f_factorizes: bool           # r = F21^{-1} F12
    g_factorizes: bool           # r = G21^{-1} G12
    baxterized_twist: bool       # R(lambda) = F21^{-1} (lambda I + P) F12

    @property
    def passed(self) -> bool:
        return (self.conjugates_flip and self.f_factorizes and
                self.g_factorizes and self.baxterized_twist)

    def to_json(self) -> dict:
        return {"conjugates_flip": self.conjugates_flip,
                "f_factorizes": self.f_factorizes,
                "g_factorizes": self.g_factorizes,
                "baxterized_twist": self.baxterized_twist,
                "passed": self.passed}


def linearize(sol: SetSolution) -> LinearSolution:
    """The N^2 x N^2 matrix of the set map, plus its permutation partner."""
    n = sol.n
    entries = {}
    one = Poly.one()
    for x in range(n):
        for y in range(n):
            u, v = sol.r(x, y)
            entries[(x * n + y, u * n + v)] = one
    r_check = PolyMatrix([n, n], entries)
    r = PolyMatrix.permutation(n) @ r_check
    return LinearSolution(sol, r_check, r, n)


def baxterize(lin: LinearSolution) -> Baxterized:
    """Promote the constant solution to the lambda-dependent one."""
    ident = PolyMatrix.identity([lin.n, lin.n])
    rc = lin.r_check.scale(L) + ident
    return Baxterized(rc, PolyMatrix.permutation(lin.n) @ rc)


def _first_diff(a: PolyMatrix, b: PolyMatrix) -> list | None:
    diff = a - b
    if diff.is_zero():
        return None
    r, c = min(diff.entries)
    return [r, c, str(diff.entries[(r, c)])]


def check_basic_properties(lin: LinearSolution) -> BasicPropertiesReport:
    """The two-parameter braid identity, unitarity, crossing-unitarity and
    transpose symmetry of the Baxterized matrices, as exact identities.

    The lambda-dependent identities all rest on the involutive case (the
    Baxterized matrix solves the braid equation exactly when the constant
    one squares to the identity), so for non-involutive input only the
    constant braid identity is checked and the rest report not_applicable.
    """
    n = lin.n
    dims = [n, n, n]
    a = lin.r_check.embed([0, 1], dims)
    b = lin.r_check.embed([1, 2], dims)
    ident3 = PolyMatrix.identity(dims)

    cb_lhs = a @ b @ a
    cb_rhs = b @ a @ b
    constant_braid = PropertyResult("pass" if cb_lhs == cb_rhs else "fail",
                                    witness=_first_diff(cb_lhs, cb_rhs))

    if not lin.involutive:
        na = PropertyResult("not_applicable")
        return BasicPropertiesReport(constant_braid, na, na, na,
                                     PropertyResult("not_applicable"))

    def rc(op, p):
        return op.scale(p) + ident3

    delta = L1 - L2
    lhs = rc(a, delta) @ rc(b, L1) @ rc(a, L2)
    rhs = rc(b, L2) @ rc(a, L1) @ rc(b, delta)
    ybe = PropertyResult("pass" if lhs == rhs else "fail",
                         witness=_first_diff(lhs, rhs))

    perm = PolyMatrix.permutation(n)

    def big_r(p):
        return lin.r.scale(p) + perm

    def swap(m):
        return m.swap_slots(0, 1)

    tt_lhs = big_r(L).partial_transpose(0).partial_transpose(1)
    tt_rhs = swap(big_r(L))
    transpose_symmetry = PropertyResult(
        "pass" if tt_lhs == tt_rhs else "fail",
        witness=_first_diff(tt_lhs, tt_rhs))

    prod = big_r(L) @ swap(big_r(-L))
    scalar = prod.scalar_match()
    expected = 1 - L * L
    unitarity = PropertyResult(
        "pass" if scalar == expected else "fail",
        scalar=str(scalar) if scalar is not None else None)

    shifted = big_r(-L - n)
    prod = big_r(L).partial_transpose(0) @ shifted.partial_transpose(1)
    scalar = prod.scalar_match()
    expected = L * (-L - n)
    crossing = PropertyResult(
        "pass" if scalar == expected else "fail",
        scalar=str(scalar) if scalar is not None else None)

    return BasicPropertiesReport(constant_braid, ybe, unitarity, crossing,
                                 transpose_symmetry)


def build_twist(lin: LinearSolution) -> TwistPair:
    """The local twist F and the alternative twist G of the solution."""
    n = lin.n
    sol = lin.source
    one = Poly.one()
    f_entries = {}
    g_entries = {}
    for x in range(n):
        for y in range(n):
            f_entries[(x * n + sol.sigma[x][y], x * n + y)] = one
            g_entries[(sol.tau[y][x] * n + y, x * n + y)] = one
    F = PolyMatrix([n, n], f_entries)
    G = PolyMatrix([n, n], g_entries)

    def invertible(m):
        rows = {r for r, _ in m.entries}
        cols = {c for _, c in m.entries}
        return len(m.entries) == m.dim and len(rows) == m.dim and len(cols) == m.dim

    return TwistPair(F, G, invertible(F), invertible(G))


def build_and_check_twist(lin: LinearSolution) -> tuple:
    """Construct the twist pair and verify the four defining identities."""
    diag = diagnostics(lin.source)
    if not (diag.involutive and diag.non_degenerate):
        raise HypothesisNotMet(
            "twist construction requires an involutive, non-degenerate solution")
    n = lin.n
    pair = build_twist(lin)
    perm = PolyMatrix.permutation(n)
    ident = PolyMatrix.identity([n, n])

    f_inv = pair.F.inverse()
    f21 = perm @ pair.F @ perm
    f21_inv = f21.inverse()
    g21_inv = (perm @ pair.G @ perm).inverse()

    conjugates_flip = lin.r_check == (f_inv @ perm @ pair.F)
    f_factorizes = lin.r == (f21_inv @ pair.F)
    g_factorizes = lin.r == (g21_inv @ pair.G)
    yangian = ident.scale(L) + perm
    big_r = lin.r.scale(L) + perm
    baxterized_twist = big_r == (f21_inv @ yangian @ pair.F)

    return pair, TwistReport(conjugates_flip, f_factorizes,
                             g_factorizes, baxterized_twist)
