"""RTT series relations, Sklyanin dressing and the reflection algebra.

Series operators follow the convention A(lambda) = sum_k A^(k) mu^k with
mu = 1/lambda; an ``exact`` series is genuinely polynomial in mu, so
coefficients beyond the stored depth are zero rather than unknown.  All
two-parameter identities are checked as exact Laurent-polynomial matrix
equations after substituting mu -> 1/lambda_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .poly import L1, L2, MU, Poly, TH1, TH2
from .polymat import PolyMatrix
from .rmatrix import HypothesisNotMet, LinearSolution


@dataclass(frozen=True)
class SeriesOperator:
    slots: tuple
    coeffs: tuple
    exact: bool = False

    def __init__(self, slots: Sequence[int], coeffs: Sequence[PolyMatrix],
                 exact: bool = False):
        slots = tuple(slots)
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("series needs at least one coefficient")
        for c in coeffs:
            if c.slots != slots:
                raise ValueError(f"coefficient slots {c.slots} != {slots}")
        object.__setattr__(self, "slots", slots)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "exact", exact)

    @property
    def depth(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> PolyMatrix:
        if 0 <= k <= self.depth:
            return self.coeffs[k]
        return PolyMatrix.zeros(self.slots)

    def accessible(self, k: int) -> bool:
        """Whether order k of the series is fully determined."""
        return self.exact or k <= self.depth

    def as_polynomial(self) -> PolyMatrix:
        total = PolyMatrix.zeros(self.slots)
        for k, c in enumerate(self.coeffs):
            total = total + c.scale(MU ** k)
        return total

    def to_json(self) -> dict:
        return {"depth": self.depth, "slots": list(self.slots),
                "exact": self.exact,
                "coeffs": [c.to_json() for c in self.coeffs]}

    @staticmethod
    def from_json(obj: dict) -> "SeriesOperator":
        return SeriesOperator(obj["slots"],
                              [PolyMatrix.from_json(c) for c in obj["coeffs"]],
                              obj.get("exact", False))


def series_from_polymatrix(m: PolyMatrix, exact: bool = True) -> SeriesOperator:
    """Split a matrix polynomial in mu into its coefficient list."""
    depth = max((p.degree("mu") for p in m.entries.values()), default=0)
    coeffs = []
    for k in range(depth + 1):
        c = PolyMatrix(m.slots)
        for key, p in m.entries.items():
            q = p.coefficient("mu", k)
            if q:
                c.entries[key] = q
        coeffs.append(c)
    return SeriesOperator(m.slots, coeffs, exact=exact)


def fundamental_l_series(lin: LinearSolution) -> SeriesOperator:
    """L(lambda) = r + mu P on auxiliary (x) quantum space."""
    n = lin.n
    return SeriesOperator([n, n], [lin.r, PolyMatrix.permutation(n)], exact=True)


@dataclass
class DressParams:
    k0: PolyMatrix | None = None        # c-number boundary matrix, default I
    theta: Fraction | str | None = None  # rational, "symbolic", or None for 0
    normalization: dict = field(default_factory=dict)


@dataclass
class DressResult:
    kmatrix: PolyMatrix                  # on aux (x) quantum, polynomial in mu
    normalization: dict

    def to_json(self) -> dict:
        return {"kmatrix": self.kmatrix.to_json(),
                "normalization": self.normalization}


@dataclass
class OrderVerdict:
    n: int
    m: int
    matrix_ok: bool
    component_ok: bool | None = None
    witness: list | None = None

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "matrix_ok": self.matrix_ok,
                "component_ok": self.component_ok, "witness": self.witness}


@dataclass
class RttReport:
    orders: list
    modes_agree: bool
    yangian_form_ok: bool | None

    @property
    def passed(self) -> bool:
        return all(v.matrix_ok for v in self.orders) and self.modes_agree and \
            self.yangian_form_ok is not False

    def to_json(self) -> dict:
        return {"orders": [v.to_json() for v in self.orders],
                "modes_agree": self.modes_agree,
                "yangian_form_ok": self.yangian_form_ok,
                "passed": self.passed}


@dataclass
class ReflectionEquationReport:
    passed: bool
    constant_mode: bool
    witness: list | None

    def to_json(self) -> dict:
        return {"passed": self.passed, "constant_mode": self.constant_mode,
                "witness": self.witness}


@dataclass
class ReflectionAlgebraReport:
    orders: list                      # OrderVerdict for the full relation
    rela1_ok: bool
    rela2_ok: bool
    k0_proportional_identity: bool
    finite_subalgebra: bool

    @property
    def passed(self) -> bool:
        return all(v.matrix_ok for v in self.orders) and self.rela1_ok and \
            self.rela2_ok

    def to_json(self) -> dict:
        return {"orders": [v.to_json() for v in self.orders],
                "rela1_ok": self.rela1_ok, "rela2_ok": self.rela2_ok,
                "k0_proportional_identity": self.k0_proportional_identity,
                "finite_subalgebra": self.finite_subalgebra,
                "passed": self.passed}


def _first_diff(a: PolyMatrix, b: PolyMatrix) -> list | None:
    diff = a - b
    if diff.is_zero():
        return None
    r, c = min(diff.entries)
    return [r, c, str(diff.entries[(r, c)])]


# -- RTT -------------------------------------------------------------------

def check_rtt_series(lin: LinearSolution, series: SeriesOperator,
                     max_order: int = 3) -> RttReport:
    """Order-by-order RTT relation for a truncated series representation.

    Matrix mode checks, for each pair of orders (n, m),

        rc L1^(n+1) L2^(m) - rc L1^(n) L2^(m+1) + L1^(n) L2^(m)
          = L1^(m) L2^(n+1) rc - L1^(m+1) L2^(n) rc + L1^(m) L2^(n)

    on auxiliary (x) auxiliary (x) quantum space.  Component mode checks the
    same relation entrywise in the auxiliary indices through the generator
    blocks, and the two verdicts must agree.  When the constant solution is
    the plain flip the blocks are additionally checked against the Yangian
    bracket form.
    """
    n = lin.n
    quantum = series.slots[1:]
    if series.slots[0] != n:
        raise ValueError(f"series auxiliary dim {series.slots[0]} != {n}")
    dims = [n, n, *quantum]
    qpos = list(range(2, 2 + len(quantum)))
    rc = lin.r_check.embed([0, 1], dims)

    def l1(k):
        return series.coeff(k).embed([0, *qpos], dims)

    def l2(k):
        return series.coeff(k).embed([1, *qpos], dims)

    # Preimages of each pair under the set map, for the component route.
    pre: dict = {}
    for w in range(n):
        for wh in range(n):
            pre.setdefault(lin.source.r(w, wh), []).append((w, wh))

    orders = []
    agree = True
    pairs = [(a, b) for a in range(max_order + 1) for b in range(max_order + 1)
             if series.accessible(a + 1) and series.accessible(b + 1)]
    blocks: dict = {}

    def block(k, z, w):
        key = (k, z, w)
        if key not in blocks:
            blocks[key] = series.coeff(k).block(z, w)
        return blocks[key]

    s, t = lin.source.sigma, lin.source.tau
    for a, b in pairs:
        lhs = rc @ l1(a + 1) @ l2(b) - rc @ l1(a) @ l2(b + 1) + l1(a) @ l2(b)
        rhs = l1(b) @ l2(a + 1) @ rc - l1(b + 1) @ l2(a) @ rc + l1(b) @ l2(a)
        matrix_ok = lhs == rhs

        component_ok = True
        for p in range(n):
            for q in range(n):
                for u in range(n):
                    for v in range(n):
                        left = (block(a + 1, s[p][u], q) @ block(b, t[u][p], v)
                                - block(a, s[p][u], q) @ block(b + 1, t[u][p], v)
                                + block(a, p, q) @ block(b, u, v))
                        right = block(b, p, q) @ block(a, u, v)
                        for w, wh in pre.get((q, v), ()):
                            right = right + block(b, p, w) @ block(a + 1, u, wh) \
                                - block(b + 1, p, w) @ block(a, u, wh)
                        if left != right:
                            component_ok = False
                            break
                    if not component_ok:
                        break
                if not component_ok:
                    break
            if not component_ok:
                break
        agree = agree and matrix_ok == component_ok
        orders.append(OrderVerdict(a, b, matrix_ok, component_ok,
                                   _first_diff(lhs, rhs)))

    yangian_ok = None
    if lin.r_check == PolyMatrix.permutation(n):
        yangian_ok = True
        for a, b in pairs:
            for i in range(n):
                for j in range(n):
                    for k in range(n):
                        for l in range(n):
                            def com(x, y):
                                return x @ y - y @ x
                            lhs = com(block(a + 1, i, j), block(b, k, l)) \
                                - com(block(a, i, j), block(b + 1, k, l))
                            rhs = block(b, k, j) @ block(a, i, l) \
                                - block(a, k, j) @ block(b, i, l)
                            if lhs != rhs:
                                yangian_ok = False
    return RttReport(orders, agree, yangian_ok)


def _series_embed(series: SeriesOperator, positions, dims) -> SeriesOperator:
    return SeriesOperator(dims, [c.embed(positions, dims) for c in series.coeffs],
                          exact=series.exact)


def _series_mul(a: SeriesOperator, b: SeriesOperator) -> SeriesOperator:
    if a.slots != b.slots:
        raise ValueError("series slot mismatch")
    if not (a.exact and b.exact):
        raise ValueError("series product needs exact operands")
    depth = a.depth + b.depth
    coeffs = []
    for k in range(depth + 1):
        total = PolyMatrix.zeros(a.slots)
        for i in range(k + 1):
            total = total + a.coeff(i) @ b.coeff(k - i)
        coeffs.append(total)
    return SeriesOperator(a.slots, coeffs, exact=True)


def coproduct_series(lin: LinearSolution,
                     series: SeriesOperator | None = None) -> SeriesOperator:
    """T(lambda) = L_{13}(lambda) L_{12}(lambda) on aux (x) quantum (x) quantum."""
    if series is None:
        series = fundamental_l_series(lin)
    if len(series.slots) != 2:
        raise ValueError("coproduct expects a one-site representation")
    n, q = series.slots
    dims = [n, q, q]
    return _series_mul(_series_embed(series, [0, 2], dims),
                       _series_embed(series, [0, 1], dims))


def coproduct_rtt_check(lin: LinearSolution,
                        series: SeriesOperator | None = None,
                        max_order: int = 3) -> RttReport:
    """Verify that one extra quantum site still satisfies the RTT orders."""
    if series is None:
        series = fundamental_l_series(lin)
    base = check_rtt_series(lin, series, max_order=max_order)
    if not base.passed:
        raise HypothesisNotMet("input series fails the RTT relation")
    return check_rtt_series(lin, coproduct_series(lin, series),
                            max_order=max_order)


# -- dressing and reflection ----------------------------------------------

def _theta_poly(theta) -> Poly:
    if theta is None:
        return Poly.zero()
    if theta == "symbolic":
        return TH1
    if isinstance(theta, Poly):
        return theta
    return Poly.const(Fraction(theta))


def dress_reflection(lin: LinearSolution,
                     params: DressParams | None = None) -> DressResult:
    """Sklyanin dressing of a c-number boundary matrix.

    Uses the normalized factors (1 - theta mu) r + mu P and
    (1 + theta mu) r21 + mu P in place of L(lambda - theta) and
    L^{-1}(-lambda - theta); the dropped scalar is recorded so both sides of
    the quadratic equation stay comparable.
    """
    if not lin.involutive:
        raise HypothesisNotMet("dressing requires an involutive solution "
                               "(the L inverse uses unitarity)")
    params = params or DressParams()
    n = lin.n
    perm = PolyMatrix.permutation(n)
    r21 = perm @ lin.r @ perm
    theta = _theta_poly(params.theta)
    k0 = params.k0 if params.k0 is not None else PolyMatrix.identity([n])
    if k0.slots != (n,):
        raise ValueError(f"boundary matrix must act on one slot of dim {n}")
    k0_aux = k0.embed([0], [n, n])

    left = lin.r.scale(1 - theta * MU) + perm.scale(MU)
    right = r21.scale(1 + theta * MU) + perm.scale(MU)
    dressed = left @ k0_aux @ right
    norm = {
        "dropped_factor": "mu^2*(l-th1)*(l+th1)*(1-(l+th1)^-2)",
        "theta": str(theta),
    }
    return DressResult(dressed, norm)


def check_reflection_equation(lin: LinearSolution, kmatrix: PolyMatrix,
                              constant_mode: bool = False) -> ReflectionEquationReport:
    """Braid-form reflection equation as an exact two-variable identity.

    The K operator may live on the auxiliary slot alone or on auxiliary (x)
    quantum; entries may involve mu (and theta), which gets substituted by
    1/lambda_i per side.  Constant mode drops the spectral parameters and
    checks rc k1 rc k1 = k1 rc k1 rc.
    """
    n = lin.n
    if kmatrix.slots[0] != n:
        raise ValueError(f"K auxiliary dim {kmatrix.slots[0]} != {n}")
    quantum = list(kmatrix.slots[1:])
    dims = [n, n, *quantum]
    qpos = list(range(2, 2 + len(quantum)))
    rc = lin.r_check.embed([0, 1], dims)
    if constant_mode:
        k1 = kmatrix.embed([0, *qpos], dims)
        lhs = rc @ k1 @ rc @ k1
        rhs = k1 @ rc @ k1 @ rc
        return ReflectionEquationReport(lhs == rhs, True, _first_diff(lhs, rhs))

    ident = PolyMatrix.identity(dims)

    def rc_at(p):
        return rc.scale(p) + ident

    def k_at(which):
        target = "l1" if which == 1 else "l2"
        m = kmatrix.substitute("mu", target, -1)
        m = m.substitute("l", target, 1)
        return m.embed([0, *qpos], dims)

    k_one, k_two = k_at(1), k_at(2)
    lhs = rc_at(L1 - L2) @ k_one @ rc_at(L1 + L2) @ k_two
    rhs = k_two @ rc_at(L1 + L2) @ k_one @ rc_at(L1 - L2)
    return ReflectionEquationReport(lhs == rhs, False, _first_diff(lhs, rhs))


def coproduct_reflection_check(lin: LinearSolution,
                               params: DressParams | None = None) -> ReflectionEquationReport:
    """One extra dressing site: T = L_{02}(l - th2) K_{01} Lhat_{02}(l + th2)
    must again satisfy the braid-form reflection equation."""
    dressed = dress_reflection(lin, params)
    n = lin.n
    dims = [n, n, n]
    perm = PolyMatrix.permutation(n)
    r21 = perm @ lin.r @ perm
    left = (lin.r.scale(1 - TH2 * MU) + perm.scale(MU)).embed([0, 2], dims)
    right = (r21.scale(1 + TH2 * MU) + perm.scale(MU)).embed([0, 2], dims)
    kmid = dressed.kmatrix.embed([0, 1], dims)
    big = left @ kmid @ right
    return check_reflection_equation(lin, big)


def check_reflection_algebra(lin: LinearSolution, series: SeriesOperator,
                             max_order: int | None = None) -> ReflectionAlgebraReport:
    """Exchange relations among the series coefficients of a K operator.

    Verifies the full order-(n, m) relation, the commutation of rc K^(0) rc
    with every accessible coefficient, and the first-order relation whose
    m = 1 instance generates the finite sub-algebra when K^(0) is a multiple
    of the identity.
    """
    if not lin.involutive:
        raise HypothesisNotMet("reflection algebra checks assume an involutive solution")
    if series.depth < 2:
        raise ValueError("series depth below 2: no checkable orders")
    n = lin.n
    if series.slots[0] != n:
        raise ValueError(f"series auxiliary dim {series.slots[0]} != {n}")
    quantum = list(series.slots[1:])
    dims = [n, n, *quantum]
    qpos = list(range(2, 2 + len(quantum)))
    rc = lin.r_check.embed([0, 1], dims)

    def k(j):
        return series.coeff(j).embed([0, *qpos], dims)

    if max_order is None:
        max_order = series.depth + 2 if series.exact else series.depth
    if series.exact:
        pairs = [(a, b) for a in range(max_order + 1)
                 for b in range(max_order + 1)]
    else:
        pairs = [(a, b) for a in range(series.depth - 1)
                 for b in range(series.depth - 1) if a + b <= series.depth - 2]

    orders = []
    for a, b in pairs:
        lhs = (rc @ k(a + 2) @ rc @ k(b) - rc @ k(a) @ rc @ k(b + 2)
               + rc @ k(a + 1) @ k(b) - rc @ k(a) @ k(b + 1)
               + k(a + 1) @ rc @ k(b) + k(a) @ rc @ k(b + 1) + k(a) @ k(b))
        rhs = (k(b) @ rc @ k(a + 2) @ rc - k(b + 2) @ rc @ k(a) @ rc
               + k(b) @ k(a + 1) @ rc - k(b + 1) @ k(a) @ rc
               + k(b + 1) @ rc @ k(a) + k(b) @ rc @ k(a + 1) + k(b) @ k(a))
        orders.append(OrderVerdict(a, b, lhs == rhs, None, _first_diff(lhs, rhs)))

    ms = range(max_order + 1) if series.exact else range(series.depth + 1)
    dressed0 = rc @ k(0) @ rc
    rela1_ok = all((dressed0 @ k(m) - k(m) @ dressed0).is_zero() for m in ms)
    dressed1 = rc @ k(1) @ rc
    rela2_ok = all(
        (dressed1 @ k(m) - k(m) @ dressed1) ==
        (k(m) @ k(0) @ rc + k(m) @ rc @ k(0) - k(0) @ rc @ k(m) - rc @ k(0) @ k(m))
        for m in ms)

    k0_scalar = series.coeff(0).scalar_match()
    k0_prop_id = k0_scalar is not None and not k0_scalar.is_zero()
    finite = k0_prop_id and rela2_ok
    return ReflectionAlgebraReport(orders, rela1_ok, rela2_ok, k0_prop_id, finite)
