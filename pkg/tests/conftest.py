"""Shared fixtures: small reference structures and independent oracles."""

import itertools

import pytest

from stybe.algebra import GroupTable, NearBrace, RingTable, brace_from_radical_ring
from stybe.ybe import SetSolution


def cyclic_add(n):
    return [[(a + b) % n for b in range(n)] for a in range(n)]


@pytest.fixture
def z4_radical_ring():
    """Z/4 with a*b = 2ab: nilpotent, hence radical."""
    n = 4
    add = GroupTable(n, cyclic_add(n))
    times = [[(2 * a * b) % n for b in range(n)] for a in range(n)]
    return RingTable(n, add, times)


@pytest.fixture
def z4_brace(z4_radical_ring):
    return brace_from_radical_ring(z4_radical_ring)


def s3_table():
    perms = sorted(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    op = [[index[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]
    return GroupTable(6, op)


@pytest.fixture
def s3_trivial_skew_brace():
    """+ = circle = the S3 product: the trivial skew brace on S3."""
    gt = s3_table()
    return NearBrace(6, gt, gt, "skew_brace")


def conjugation_solution():
    """sigma_a(b) = a b a^{-1}, tau_b(a) = b: the conjugation solution on S3."""
    gt = s3_table()
    inv = gt.inverses()
    sigma = [[gt(gt(a, b), inv[a]) for b in range(6)] for a in range(6)]
    tau = [[a for a in range(6)] for _ in range(6)]
    return SetSolution(6, sigma, tau)


def brute_force_solutions(n, involutive=False):
    """Independent oracle: scan every pair of sigma/tau permutation tables
    and keep those satisfying the braid identity by direct composition.
    Deliberately avoids every code path of the library scan."""
    perms = list(itertools.permutations(range(n)))
    found = []
    for sigma in itertools.product(perms, repeat=n):
        for tau in itertools.product(perms, repeat=n):
            def r(x, y):
                return sigma[x][y], tau[y][x]

            ok = True
            for eta, x, y in itertools.product(range(n), repeat=3):
                a1, a2 = r(eta, x)
                b2, b3 = r(a2, y)
                c1, c2 = r(a1, b2)
                p2, p3 = r(x, y)
                q1, q2 = r(eta, p2)
                s2, s3 = r(q2, p3)
                if (c1, c2, b3) != (q1, s2, s3):
                    ok = False
                    break
            if ok and involutive:
                ok = all(r(*r(x, y)) == (x, y)
                         for x in range(n) for y in range(n))
            if ok:
                found.append((sigma, tau))
    return found


def relabel_class_count(pairs, n):
    """Number of orbits of (sigma, tau) pairs under simultaneous relabeling."""
    def relabel(table, pi):
        inv = [0] * n
        for i, v in enumerate(pi):
            inv[v] = i
        return tuple(tuple(pi[table[inv[a]][inv[b]]] for b in range(n))
                     for a in range(n))

    seen = set()
    for sigma, tau in pairs:
        key = min((relabel(sigma, pi), relabel(tau, pi))
                  for pi in itertools.permutations(range(n)))
        seen.add(key)
    return len(seen)
