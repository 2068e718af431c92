"""Set-theoretic reflections k: X -> X for a given braid-equation solution."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .algebra import BoundExceeded, NearBrace, StructuralError
from .ybe import SetSolution, diagnostics

MODES = ("direct", "cc1", "dual")
FILTERS = ("all", "tau_equivariant", "central")

DEFAULT_ALL_BOUND = 6


class HypothesisNotMet(ValueError):
    """The requested mode needs an involutive, non-degenerate solution."""


@dataclass(frozen=True)
class ReflectionMap:
    table: tuple

    def __init__(self, table: Sequence[int]):
        table = tuple(int(v) for v in table)
        n = len(table)
        if any(not 0 <= v < n for v in table):
            raise StructuralError(f"reflection entries out of range: {table}")
        object.__setattr__(self, "table", table)

    def __call__(self, x: int) -> int:
        return self.table[x]

    @property
    def n(self) -> int:
        return len(self.table)

    @property
    def bijective(self) -> bool:
        return len(set(self.table)) == self.n

    @property
    def involutive(self) -> bool:
        return all(self.table[self.table[x]] == x for x in range(self.n))

    def to_json(self) -> dict:
        return {"k": list(self.table)}

    @staticmethod
    def from_json(obj: dict) -> "ReflectionMap":
        return ReflectionMap(obj["k"])


@dataclass
class ReflectionReport:
    mode: str
    passed: bool
    witness: tuple | None
    bijective: bool
    involutive_map: bool

    def to_json(self) -> dict:
        return {"mode": self.mode, "passed": self.passed,
                "witness": list(self.witness) if self.witness else None,
                "bijective": self.bijective,
                "involutive_map": self.involutive_map}


def _direct_witness(sol: SetSolution, k: ReflectionMap, dual: bool) -> tuple | None:
    """First pair where r(k x id)r(k x id) and (k x id)r(k x id)r differ
    (k acting on the second argument in dual mode)."""
    n = sol.n

    def kx(x, y):
        return (x, k(y)) if dual else (k(x), y)

    for x, y in itertools.product(range(n), repeat=2):
        lhs = sol.r(*kx(*sol.r(*kx(x, y))))
        rhs = kx(*sol.r(*kx(*sol.r(x, y))))
        if lhs != rhs:
            return (x, y)
    return None


def verify_reflection(sol: SetSolution, k: ReflectionMap,
                      mode: str = "direct") -> ReflectionReport:
    """Check the reflection property in the requested mode.

    cc1 is the equivalent pointwise criterion for involutive non-degenerate
    solutions and is refused outside that hypothesis; dual swaps which
    tensor factor k acts on.
    """
    if mode not in MODES:
        raise StructuralError(f"unknown mode {mode!r}")
    if k.n != sol.n:
        raise StructuralError("reflection and solution sizes disagree")
    witness = None
    if mode == "cc1":
        diag = diagnostics(sol)
        if not (diag.involutive and diag.non_degenerate):
            raise HypothesisNotMet(
                "cc1 criterion requires an involutive, non-degenerate solution")
        s, t = sol.sigma, sol.tau
        for x, y in itertools.product(range(sol.n), repeat=2):
            if t[t[y][x]][k(s[x][y])] != t[t[y][k(x)]][k(s[k(x)][y])]:
                witness = (x, y)
                break
    else:
        witness = _direct_witness(sol, k, dual=(mode == "dual"))
    return ReflectionReport(mode, witness is None, witness,
                            k.bijective, k.involutive)


def central_elements(nb: NearBrace) -> list:
    """Elements commuting with everything in the circle group."""
    return [c for c in range(nb.n)
            if all(nb.mul(c, x) == nb.mul(x, c) for x in range(nb.n))]


def enumerate_reflections(sol: SetSolution, filter: str = "all",
                          nb: NearBrace | None = None,
                          bound: int = DEFAULT_ALL_BOUND) -> Iterator[ReflectionMap]:
    """Stream reflections of the solution.

    all: every map k with the direct property (exhaustive over N^N maps);
    tau_equivariant: maps commuting with every tau_y, re-verified;
    central: k = tau_c for circle-central c of the supplied structure.
    """
    if filter not in FILTERS:
        raise StructuralError(f"unknown filter {filter!r}")
    n = sol.n
    if filter == "all":
        if n > bound:
            raise BoundExceeded(f"size {n} exceeds bound {bound} for filter=all")
        for table in itertools.product(range(n), repeat=n):
            k = ReflectionMap(table)
            if _direct_witness(sol, k, dual=False) is None:
                yield k
    elif filter == "tau_equivariant":
        t = sol.tau
        for table in itertools.product(range(n), repeat=n):
            k = ReflectionMap(table)
            if all(k(t[y][x]) == t[y][k(x)]
                   for x in range(n) for y in range(n)):
                if _direct_witness(sol, k, dual=False) is not None:
                    raise AssertionError(
                        "tau-equivariant map failed the direct reflection check")
                yield k
    else:
        if nb is None:
            raise StructuralError("filter=central requires a structure")
        if nb.n != n:
            raise StructuralError("structure and solution sizes disagree")
        for c in central_elements(nb):
            k = ReflectionMap(sol.tau[c])
            if _direct_witness(sol, k, dual=False) is not None:
                raise AssertionError(
                    "central-element map failed the direct reflection check")
            yield k
