"""Finite groups, braces, skew braces and near braces as explicit tables.

Elements are always the canonical indices 0..N-1 and both operations are
N x N lookup tables.  Verification is exhaustive; failures carry the first
witness tuple in lexicographic order so runs are reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

LEVELS = ("left_brace", "skew_brace", "near_brace", "singular_near_brace")

DEFAULT_BRACE_BOUND = 6
DEFAULT_NEAR_BRACE_BOUND = 4


class StructuralError(ValueError):
    """Malformed input (index out of range, shape mismatch): not an axiom failure."""


class BoundExceeded(ValueError):
    """Requested enumeration size exceeds the configured bound."""


class NotRadicalRing(ValueError):
    def __init__(self, element: int):
        self.element = element
        super().__init__(f"not a radical ring: element {element} has no circle inverse")


def _check_table(table: Sequence[Sequence[int]], n: int, name: str):
    if len(table) != n:
        raise StructuralError(f"{name}: expected {n} rows, got {len(table)}")
    for i, row in enumerate(table):
        if len(row) != n:
            raise StructuralError(f"{name}: row {i} has length {len(row)}")
        for j, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < n:
                raise StructuralError(f"{name}[{i}][{j}] = {v!r} out of range")


@dataclass(frozen=True)
class GroupTable:
    """A binary operation table, intended (but not trusted) to be a group."""

    n: int
    op: tuple

    def __init__(self, n: int, op: Sequence[Sequence[int]]):
        _check_table(op, n, "op")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "op", tuple(tuple(row) for row in op))

    def __call__(self, a: int, b: int) -> int:
        return self.op[a][b]

    def group_failures(self) -> list:
        """All group-axiom failures, first witness each: Latin square,
        associativity, two-sided identity, two-sided inverses."""
        n, op = self.n, self.op
        failures = []
        for a in range(n):
            if len(set(op[a])) != n:
                failures.append(("latin_row", (a,)))
                break
        for b in range(n):
            if len({op[a][b] for a in range(n)}) != n:
                failures.append(("latin_col", (b,)))
                break
        done = False
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if op[op[a][b]][c] != op[a][op[b][c]]:
                        failures.append(("associativity", (a, b, c)))
                        done = True
                        break
                if done:
                    break
            if done:
                break
        if self.identity() is None:
            failures.append(("identity", ()))
        elif self.inverses() is None:
            failures.append(("inverses", ()))
        return failures

    def is_group(self) -> bool:
        return not self.group_failures()

    def identity(self) -> int | None:
        for e in range(self.n):
            if all(self.op[e][a] == a == self.op[a][e] for a in range(self.n)):
                return e
        return None

    def inverses(self) -> tuple | None:
        e = self.identity()
        if e is None:
            return None
        inv = []
        for a in range(self.n):
            b = next((b for b in range(self.n)
                      if self.op[a][b] == e == self.op[b][a]), None)
            if b is None:
                return None
            inv.append(b)
        return tuple(inv)

    def inv(self, a: int) -> int:
        invs = self.inverses()
        if invs is None:
            raise StructuralError("operation has no two-sided inverses")
        return invs[a]

    def is_abelian(self) -> bool:
        return all(self.op[a][b] == self.op[b][a]
                   for a in range(self.n) for b in range(self.n))


@dataclass(frozen=True)
class NearBrace:
    n: int
    add: GroupTable
    mul: GroupTable
    kind: str = "near_brace"

    def __post_init__(self):
        if self.kind not in LEVELS:
            raise StructuralError(f"unknown kind {self.kind!r}")
        if self.add.n != self.n or self.mul.n != self.n:
            raise StructuralError("table sizes disagree")

    @property
    def zero(self) -> int | None:
        return self.add.identity()

    @property
    def one(self) -> int | None:
        return self.mul.identity()

    def neg(self, a: int) -> int:
        return self.add.inv(a)

    def to_json(self) -> dict:
        return {"size": self.n, "add": [list(r) for r in self.add.op],
                "mul": [list(r) for r in self.mul.op], "kind": self.kind}

    @staticmethod
    def from_json(obj: dict) -> "NearBrace":
        n = obj["size"]
        return NearBrace(n, GroupTable(n, obj["add"]), GroupTable(n, obj["mul"]),
                         obj.get("kind", "near_brace"))


@dataclass(frozen=True)
class RingTable:
    n: int
    add: GroupTable
    times: tuple

    def __init__(self, n: int, add: GroupTable, times: Sequence[Sequence[int]]):
        _check_table(times, n, "times")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "add", add)
        object.__setattr__(self, "times", tuple(tuple(row) for row in times))

    def ring_failures(self) -> list:
        failures = list(f for f in self.add.group_failures())
        if not failures and not self.add.is_abelian():
            failures.append(("add_abelian", ()))
        n, t, add = self.n, self.times, self.add.op
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                failures.append(("times_associativity", (a, b, c)))
                break
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[a][add[b][c]] != add[t[a][b]][t[a][c]]:
                failures.append(("left_distributivity", (a, b, c)))
                break
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[add[a][b]][c] != add[t[a][c]][t[b][c]]:
                failures.append(("right_distributivity", (a, b, c)))
                break
        return failures


@dataclass
class StructureReport:
    valid: bool
    failures: list = field(default_factory=list)
    derived: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "failures": [{"axiom": a, "witness": list(w)} for a, w in self.failures],
            "derived": self.derived,
        }


def _sub(nb: NearBrace, a: int, b: int) -> int:
    """a - b = a + (-b) in the additive group."""
    return nb.add(a, nb.neg(b))


def verify_structure(nb: NearBrace, level: str) -> StructureReport:
    """Exhaustively check the axioms for the requested level.

    Levels stack: left_brace needs abelian addition, shared identities and
    a.(b+c) = a.b - a + a.c; skew_brace relaxes nothing on the left but adds
    the mirrored condition; near_brace only needs a.(b+c) = a.b - a.0 + a.c
    with possibly distinct identities; singular_near_brace additionally pins
    a - a.0 = 1 = -a.0 + a.
    """
    if level not in LEVELS:
        raise StructuralError(f"unknown level {level!r}")
    n = nb.n
    failures = []
    for name, gt in (("add", nb.add), ("mul", nb.mul)):
        for axiom, witness in gt.group_failures():
            failures.append((f"{name}_{axiom}", witness))
    if failures:
        return StructureReport(False, failures, {})

    add, mul = nb.add, nb.mul
    zero, one = nb.zero, nb.one
    derived: dict = {"zero": zero, "one": one, "zero_equals_one": zero == one}

    if level == "left_brace" and not add.is_abelian():
        witness = next((a, b) for a in range(n) for b in range(n)
                       if add(a, b) != add(b, a))
        failures.append(("add_abelian", witness))

    if level in ("left_brace", "skew_brace") and zero != one:
        failures.append(("zero_equals_one", (zero, one)))

    def left_skew_dis(a, b, c):
        # a.(b+c) = a.b - a + a.c
        return mul(a, add(b, c)) == add(_sub(nb, mul(a, b), a), mul(a, c))

    def right_skew_dis(a, b, c):
        # (b+c).a = b.a - a + c.a
        return mul(add(b, c), a) == add(_sub(nb, mul(b, a), a), mul(c, a))

    def near_dis(a, b, c):
        # a.(b+c) = a.(b) - a.0 + a.c
        return mul(a, add(b, c)) == add(_sub(nb, mul(a, b), mul(a, zero)), mul(a, c))

    if level in ("left_brace", "skew_brace"):
        rule, name = left_skew_dis, "left_distributivity"
    else:
        rule, name = near_dis, "near_distributivity"
    witness = next((t for t in itertools.product(range(n), repeat=3)
                    if not rule(*t)), None)
    if witness:
        failures.append((name, witness))

    if level == "skew_brace":
        witness = next((t for t in itertools.product(range(n), repeat=3)
                        if not right_skew_dis(*t)), None)
        if witness:
            failures.append(("right_distributivity", witness))

    if level == "singular_near_brace":
        for a in range(n):
            if _sub(nb, a, mul(a, zero)) != one:
                failures.append(("singular_right", (a,)))
                break
        for a in range(n):
            if add(nb.neg(mul(a, zero)), a) != one:
                failures.append(("singular_left", (a,)))
                break
        if not failures:
            # Derived identities of singular near braces.
            derived["zero_mul_zero_is_minus_one"] = mul(zero, zero) == nb.neg(one)
            derived["one_plus_one_is_zero_inv"] = add(one, one) == mul.inv(zero)
            derived["one_central_in_add"] = all(
                add(one, a) == add(a, one) for a in range(n))
            for key in ("zero_mul_zero_is_minus_one", "one_plus_one_is_zero_inv",
                        "one_central_in_add"):
                if not derived[key]:
                    failures.append((key, ()))

    return StructureReport(not failures, failures, derived)


def brace_from_radical_ring(ring: RingTable) -> NearBrace:
    """Build the left brace with a.b = a*b + a + b; fails if the circle
    operation is not a group (the ring is not radical)."""
    ring_failures = ring.ring_failures()
    if ring_failures:
        raise StructuralError(f"not a ring: {ring_failures[0]}")
    n, add = ring.n, ring.add
    circle = [[add(add(ring.times[a][b], a), b) for b in range(n)] for a in range(n)]
    mul = GroupTable(n, circle)
    zero = add.identity()
    # Associativity of circle follows from the ring axioms; the only way the
    # construction can fail is a missing quasi-inverse.
    for a in range(n):
        if not any(circle[a][b] == zero == circle[b][a] for b in range(n)):
            raise NotRadicalRing(a)
    nb = NearBrace(n, add, mul, "left_brace")
    report = verify_structure(nb, "left_brace")
    if not report.valid:
        raise StructuralError(f"radical-ring construction failed: {report.failures[0]}")
    return nb


# -- enumeration -----------------------------------------------------------

def _abstract_groups(n: int) -> list:
    """Cayley tables (identity 0) of all isomorphism types of order n <= 7.

    Orders 1,2,3,5,7 are prime (cyclic only); order 4 gives C4 and C2^2;
    order 6 gives C6 and S3.
    """
    def cyclic(k):
        return [[(a + b) % k for b in range(k)] for a in range(k)]

    def product(t1, t2):
        n1, n2 = len(t1), len(t2)
        size = n1 * n2
        table = [[0] * size for _ in range(size)]
        for a1, a2, b1, b2 in itertools.product(range(n1), range(n2), range(n1), range(n2)):
            table[a1 * n2 + a2][b1 * n2 + b2] = t1[a1][b1] * n2 + t2[a2][b2]
        return table

    def sym3():
        perms = sorted(itertools.permutations(range(3)))
        index = {p: i for i, p in enumerate(perms)}
        return [[index[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]

    if n in (1, 2, 3, 5, 7):
        return [cyclic(n)]
    if n == 4:
        return [cyclic(4), product(cyclic(2), cyclic(2))]
    if n == 6:
        return [cyclic(6), sym3()]
    raise BoundExceeded(f"no group catalogue for order {n}")


def labeled_group_tables(n: int, abelian_only: bool = False) -> list:
    """All distinct group Cayley tables on 0..n-1, any identity position.

    Generated by relabeling each isomorphism type by every permutation and
    deduplicating; exhaustive for n <= 7 since the catalogue is complete.
    """
    seen = set()
    out = []
    for table in _abstract_groups(n):
        base = GroupTable(n, table)
        if abelian_only and not base.is_abelian():
            continue
        for pi in itertools.permutations(range(n)):
            relabeled = tuple(
                tuple(pi[table[a][b]] for b in map(pi.index, range(n)))
                for a in map(pi.index, range(n))
            )
            if relabeled not in seen:
                seen.add(relabeled)
                out.append(relabeled)
    out.sort()
    return [GroupTable(n, [list(r) for r in t]) for t in out]


def relabel_table(table, pi):
    n = len(table)
    inv = [0] * n
    for i, v in enumerate(pi):
        inv[v] = i
    return tuple(tuple(pi[table[inv[a]][inv[b]]] for b in range(n)) for a in range(n))


def canonical_pair(add_op, mul_op) -> tuple:
    """Lexicographically minimal (add, mul) over simultaneous relabelings."""
    n = len(add_op)
    best = None
    for pi in itertools.permutations(range(n)):
        cand = (relabel_table(add_op, pi), relabel_table(mul_op, pi))
        if best is None or cand < best:
            best = cand
    return best


def enumerate_near_braces(n: int, level: str, canonical: bool = False,
                          bound: int | None = None) -> Iterator[NearBrace]:
    """Yield every structure of the requested level on 0..n-1, in
    deterministic order; with ``canonical`` only one representative per
    relabeling class is emitted."""
    if level not in LEVELS:
        raise StructuralError(f"unknown level {level!r}")
    if bound is None:
        bound = DEFAULT_BRACE_BOUND if level in ("left_brace", "skew_brace") \
            else DEFAULT_NEAR_BRACE_BOUND
    if n > bound:
        raise BoundExceeded(f"size {n} exceeds bound {bound} for level {level}")

    abelian_add = level == "left_brace"
    identities_match = level in ("left_brace", "skew_brace")
    adds = labeled_group_tables(n, abelian_only=abelian_add)
    muls = labeled_group_tables(n)
    seen = set()
    rng = range(n)
    for add in adds:
        e = add.identity()
        neg = add.inverses()
        a_op = add.op
        for mul in muls:
            if identities_match and mul.identity() != e:
                continue
            m_op = mul.op
            # Tables are already groups; only the brace conditions remain.
            if identities_match:
                ok = all(
                    m_op[a][a_op[b][c]] == a_op[a_op[m_op[a][b]][neg[a]]][m_op[a][c]]
                    for a in rng for b in rng for c in rng)
                if ok and level == "skew_brace":
                    ok = all(
                        m_op[a_op[b][c]][a] == a_op[a_op[m_op[b][a]][neg[a]]][m_op[c][a]]
                        for a in rng for b in rng for c in rng)
            else:
                ok = all(
                    m_op[a][a_op[b][c]] ==
                    a_op[a_op[m_op[a][b]][neg[m_op[a][e]]]][m_op[a][c]]
                    for a in rng for b in rng for c in rng)
                if ok and level == "singular_near_brace":
                    one = mul.identity()
                    ok = all(
                        a_op[a][neg[m_op[a][e]]] == one ==
                        a_op[neg[m_op[a][e]]][a]
                        for a in rng)
            if not ok:
                continue
            if canonical:
                key = canonical_pair(add.op, mul.op)
                if key in seen:
                    continue
                seen.add(key)
            yield NearBrace(n, add, mul, level)
