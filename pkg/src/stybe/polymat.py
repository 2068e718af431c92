"""Sparse square matrices with exact polynomial entries and tensor-slot bookkeeping.

A matrix carries an ordered list of factor dimensions (``slots``); basis
order is lexicographic with the first slot most significant, so on a
two-slot space e_x (x) e_y sits at index x*N + y.  All operations return new
matrices; nothing mutates in place.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import prod
from typing import Mapping, Sequence

from .poly import Poly


class PolyMatrix:
    __slots__ = ("dim", "slots", "entries")

    def __init__(self, slots: Sequence[int],
                 entries: Mapping[tuple, Poly] | None = None):
        self.slots = tuple(int(d) for d in slots)
        if not self.slots or any(d < 1 for d in self.slots):
            raise ValueError(f"bad slot structure {slots}")
        self.dim = prod(self.slots)
        clean = {}
        if entries:
            for (r, c), p in entries.items():
                if not isinstance(p, Poly):
                    p = Poly.const(p)
                if not (0 <= r < self.dim and 0 <= c < self.dim):
                    raise ValueError(f"entry ({r},{c}) out of range for dim {self.dim}")
                if p:
                    clean[(r, c)] = p
        self.entries = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zeros(slots: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(slots)

    @staticmethod
    def identity(slots: Sequence[int]) -> "PolyMatrix":
        m = PolyMatrix(slots)
        one = Poly.one()
        m.entries = {(i, i): one for i in range(m.dim)}
        return m

    @staticmethod
    def unit(n: int, x: int, y: int) -> "PolyMatrix":
        """The elementary matrix e_{x,y} on a single slot of dimension n."""
        return PolyMatrix([n], {(x, y): Poly.one()})

    @staticmethod
    def permutation(n: int) -> "PolyMatrix":
        """The flip on V (x) V: sum of e_{x,y} (x) e_{y,x}."""
        entries = {}
        one = Poly.one()
        for x in range(n):
            for y in range(n):
                entries[(x * n + y, y * n + x)] = one
        return PolyMatrix([n, n], entries)

    @staticmethod
    def from_rows(rows: Sequence[Sequence], slots: Sequence[int] | None = None) -> "PolyMatrix":
        dim = len(rows)
        m = PolyMatrix(slots if slots is not None else [dim])
        if m.dim != dim:
            raise ValueError("slot structure does not match row count")
        for r, row in enumerate(rows):
            for c, v in enumerate(row):
                p = v if isinstance(v, Poly) else Poly.const(v)
                if p:
                    m.entries[(r, c)] = p
        return m

    # -- index helpers -----------------------------------------------------

    def _split(self, idx: int) -> tuple:
        out = []
        for d in reversed(self.slots):
            out.append(idx % d)
            idx //= d
        return tuple(reversed(out))

    def _join(self, parts: Sequence[int]) -> int:
        idx = 0
        for d, p in zip(self.slots, parts):
            idx = idx * d + p
        return idx

    # -- arithmetic --------------------------------------------------------

    def _check_compat(self, other: "PolyMatrix"):
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch {self.dim} vs {other.dim}")

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_compat(other)
        out = PolyMatrix(self.slots)
        merged = dict(self.entries)
        for key, p in other.entries.items():
            s = merged.get(key)
            s = p if s is None else s + p
            if s:
                merged[key] = s
            else:
                merged.pop(key, None)
        out.entries = merged
        return out

    def __neg__(self) -> "PolyMatrix":
        out = PolyMatrix(self.slots)
        out.entries = {key: -p for key, p in self.entries.items()}
        return out

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def scale(self, factor) -> "PolyMatrix":
        factor = factor if isinstance(factor, Poly) else Poly.const(factor)
        out = PolyMatrix(self.slots)
        if factor:
            out.entries = {key: p * factor for key, p in self.entries.items()}
        return out

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_compat(other)
        by_row: dict = {}
        for (r, c), p in other.entries.items():
            by_row.setdefault(r, []).append((c, p))
        acc: dict = {}
        for (r, k), p in self.entries.items():
            for c, q in by_row.get(k, ()):
                key = (r, c)
                s = acc.get(key)
                s = p * q if s is None else s + p * q
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
        out = PolyMatrix(self.slots)
        out.entries = acc
        return out

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.dim == other.dim and self.entries == other.entries

    def __hash__(self):
        return hash((self.slots, frozenset(self.entries.items())))

    def is_zero(self) -> bool:
        return not self.entries

    # -- tensor structure --------------------------------------------------

    def kron(self, other: "PolyMatrix") -> "PolyMatrix":
        out = PolyMatrix(self.slots + other.slots)
        d = other.dim
        entries = {}
        for (r1, c1), p in self.entries.items():
            for (r2, c2), q in other.entries.items():
                entries[(r1 * d + r2, c1 * d + c2)] = p * q
        out.entries = entries
        return out

    def transpose(self) -> "PolyMatrix":
        out = PolyMatrix(self.slots)
        out.entries = {(c, r): p for (r, c), p in self.entries.items()}
        return out

    def partial_transpose(self, slot: int) -> "PolyMatrix":
        if not 0 <= slot < len(self.slots):
            raise ValueError(f"slot {slot} out of range for {self.slots}")
        out = PolyMatrix(self.slots)
        entries = {}
        for (r, c), p in self.entries.items():
            rp, cp = list(self._split(r)), list(self._split(c))
            rp[slot], cp[slot] = cp[slot], rp[slot]
            key = (self._join(rp), self._join(cp))
            prev = entries.get(key)
            entries[key] = p if prev is None else prev + p
        out.entries = {k: v for k, v in entries.items() if v}
        return out

    def embed(self, positions: Sequence[int], dims: Sequence[int]) -> "PolyMatrix":
        """Place this operator at the given slot positions of a larger space,
        acting as the identity elsewhere.
        """
        positions = tuple(positions)
        if len(positions) != len(self.slots):
            raise ValueError("one target position per slot required")
        if len(set(positions)) != len(positions):
            raise ValueError("duplicate target positions")
        for pos, d in zip(positions, self.slots):
            if dims[pos] != d:
                raise ValueError(f"slot {pos}: dim {dims[pos]} != {d}")
        rest = [i for i in range(len(dims)) if i not in positions]
        out = PolyMatrix(dims)
        entries = {}
        for (r, c), p in self.entries.items():
            rparts, cparts = self._split(r), self._split(c)
            for idparts in itertools.product(*(range(dims[i]) for i in rest)):
                rfull = [0] * len(dims)
                cfull = [0] * len(dims)
                for pos, rp, cp in zip(positions, rparts, cparts):
                    rfull[pos], cfull[pos] = rp, cp
                for pos, v in zip(rest, idparts):
                    rfull[pos] = cfull[pos] = v
                entries[(out._join(rfull), out._join(cfull))] = p
        out.entries = entries
        return out

    def swap_slots(self, i: int, j: int) -> "PolyMatrix":
        """Relabel tensor factors i and j (conjugation by the slot flip)."""
        if self.slots[i] != self.slots[j]:
            raise ValueError("can only swap slots of equal dimension")
        out = PolyMatrix(self.slots)
        entries = {}
        for (r, c), p in self.entries.items():
            rp, cp = list(self._split(r)), list(self._split(c))
            rp[i], rp[j] = rp[j], rp[i]
            cp[i], cp[j] = cp[j], cp[i]
            entries[(self._join(rp), self._join(cp))] = p
        out.entries = entries
        return out

    def block(self, row: int, col: int) -> "PolyMatrix":
        """On a 2-slot space, the (row, col) block with respect to the first
        slot: the matrix acting on the second slot."""
        if len(self.slots) < 2:
            raise ValueError("block extraction needs at least two slots")
        n0 = self.slots[0]
        sub = self.slots[1:]
        d = prod(sub)
        out = PolyMatrix(sub)
        for (r, c), p in self.entries.items():
            if r // d == row and c // d == col:
                out.entries[(r % d, c % d)] = p
        return out

    # -- exact solvers -----------------------------------------------------

    def substitute(self, name: str, target: str, power: int) -> "PolyMatrix":
        out = PolyMatrix(self.slots)
        out.entries = {
            key: q for key, p in self.entries.items()
            if (q := p.subst_monomial(name, target, power))
        }
        return out

    def scalar_match(self) -> Poly | None:
        """Return c if this matrix equals c*I exactly, else None."""
        diag = None
        for (r, c), p in self.entries.items():
            if r != c:
                return None
            if diag is None:
                diag = p
            elif diag != p:
                return None
        if diag is None:
            return Poly.zero() if self.dim > 0 else None
        if len(self.entries) != self.dim:
            return None
        return diag

    def inverse(self) -> "PolyMatrix":
        """Exact inverse for matrices with constant rational entries."""
        n = self.dim
        aug = [[Fraction(0)] * (2 * n) for _ in range(n)]
        for (r, c), p in self.entries.items():
            aug[r][c] = p.constant_value()
        for i in range(n):
            aug[i][n + i] = Fraction(1)
        for col in range(n):
            pivot = next((r for r in range(col, n) if aug[r][col]), None)
            if pivot is None:
                raise ValueError("matrix is singular")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            pv = aug[col][col]
            aug[col] = [v / pv for v in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
        out = PolyMatrix(self.slots)
        for r in range(n):
            for c in range(n):
                if aug[r][n + c]:
                    out.entries[(r, c)] = Poly.const(aug[r][n + c])
        return out

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "slots": list(self.slots),
            "entries": [
                [r, c, self.entries[(r, c)].to_json()]
                for (r, c) in sorted(self.entries)
            ],
        }

    @staticmethod
    def from_json(obj: Mapping) -> "PolyMatrix":
        m = PolyMatrix(obj["slots"])
        if m.dim != obj["dim"]:
            raise ValueError("dim does not match slot structure")
        for r, c, poly in obj["entries"]:
            m.entries[(r, c)] = Poly.from_json(poly)
        return m

    def __repr__(self):
        return f"PolyMatrix(slots={self.slots}, nnz={len(self.entries)})"
