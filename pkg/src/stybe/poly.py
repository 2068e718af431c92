"""Exact multivariate Laurent polynomials over arbitrary-precision rationals.

The variable set is global and fixed: spectral parameters ``l``, ``l1``,
``l2``, inhomogeneities ``th``, ``th1``, ``th2``, and the series variable
``mu`` (formally 1/l).  Exponents are integers and may be negative; every
identity check in this package normalises to a common Laurent form before
comparing, so no floating point is involved anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

VARS = ("l", "l1", "l2", "mu", "th", "th1", "th2")
_VAR_INDEX = {name: i for i, name in enumerate(VARS)}
_ZERO_EXP = (0,) * len(VARS)

Scalar = Union[int, Fraction]


class Poly:
    """Sparse Laurent polynomial: map from exponent vectors to Fractions."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, Fraction] | None = None):
        clean = {}
        if terms:
            for exp, coeff in terms.items():
                c = Fraction(coeff)
                if c != 0:
                    clean[tuple(exp)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return Poly()

    @staticmethod
    def const(c: Scalar) -> "Poly":
        c = Fraction(c)
        return Poly({_ZERO_EXP: c}) if c else Poly()

    @staticmethod
    def one() -> "Poly":
        return Poly.const(1)

    @staticmethod
    def var(name: str, power: int = 1) -> "Poly":
        exp = [0] * len(VARS)
        exp[_VAR_INDEX[name]] = power
        return Poly({tuple(exp): Fraction(1)})

    # -- ring operations ---------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, Fraction(0)) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        p = Poly.__new__(Poly)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = Poly.__new__(Poly)
        p.terms = {exp: -c for exp, c in self.terms.items()}
        return p

    def __sub__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Poly._coerce(other) + (-self)

    def __mul__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(exp, Fraction(0)) + c1 * c2
                if s:
                    out[exp] = s
                else:
                    out.pop(exp, None)
        p = Poly.__new__(Poly)
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) == 1:
                (exp, c), = self.terms.items()
                return Poly({tuple(e * n for e in exp): Fraction(1) / c ** (-n)})
            raise ValueError("negative power of a non-monomial")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ZERO_EXP in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return self.terms[_ZERO_EXP]

    def degree(self, name: str) -> int:
        """Maximum exponent of ``name`` (0 for the zero polynomial)."""
        i = _VAR_INDEX[name]
        return max((exp[i] for exp in self.terms), default=0)

    def coefficient(self, name: str, power: int) -> "Poly":
        """Coefficient of ``name**power`` as a polynomial in the other variables."""
        i = _VAR_INDEX[name]
        out = {}
        for exp, c in self.terms.items():
            if exp[i] == power:
                e = list(exp)
                e[i] = 0
                out[tuple(e)] = c
        return Poly(out)

    # -- substitution ------------------------------------------------------

    def subst_monomial(self, name: str, target: str, power: int) -> "Poly":
        """Replace ``name`` by ``target**power`` (e.g. mu -> l1**-1)."""
        i, j = _VAR_INDEX[name], _VAR_INDEX[target]
        out: dict = {}
        for exp, c in self.terms.items():
            e = list(exp)
            k = e[i]
            e[i] = 0
            e[j] += k * power
            key = tuple(e)
            s = out.get(key, Fraction(0)) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return Poly(out)

    def subst(self, name: str, value: "Poly | Scalar") -> "Poly":
        """Replace ``name`` by an arbitrary polynomial (non-negative powers only)."""
        value = Poly._coerce(value)
        i = _VAR_INDEX[name]
        out = Poly.zero()
        for exp, c in self.terms.items():
            k = exp[i]
            if k < 0:
                raise ValueError("general substitution into a negative power")
            e = list(exp)
            e[i] = 0
            out = out + Poly({tuple(e): c}) * value ** k
        return out

    def eval(self, assignment: Mapping[str, Scalar]) -> Fraction:
        """Evaluate at exact rational points; every variable must be assigned."""
        total = Fraction(0)
        for exp, c in self.terms.items():
            term = c
            for name, k in zip(VARS, exp):
                if k:
                    term *= Fraction(assignment[name]) ** k
            total += term
        return total

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- formatting --------------------------------------------------------

    @staticmethod
    def monomial_key(exp: Iterable[int]) -> str:
        parts = [f"{name}^{k}" for name, k in zip(VARS, exp) if k]
        return "*".join(parts) if parts else "1"

    @staticmethod
    def parse_monomial_key(key: str) -> tuple:
        exp = [0] * len(VARS)
        if key != "1":
            for part in key.split("*"):
                name, _, k = part.partition("^")
                if name not in _VAR_INDEX:
                    raise ValueError(f"unknown variable {name!r}")
                exp[_VAR_INDEX[name]] = int(k) if k else 1
        return tuple(exp)

    def to_json(self) -> dict:
        return {
            Poly.monomial_key(exp): str(self.terms[exp])
            for exp in sorted(self.terms)
        }

    @staticmethod
    def from_json(obj: Mapping[str, str]) -> "Poly":
        return Poly({
            Poly.parse_monomial_key(key): Fraction(val)
            for key, val in obj.items()
        })

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, reverse=True):
            c = self.terms[exp]
            mono = Poly.monomial_key(exp)
            if mono == "1":
                chunk = str(c)
            elif c == 1:
                chunk = mono
            elif c == -1:
                chunk = f"-{mono}"
            else:
                chunk = f"{c}*{mono}"
            if parts and not chunk.startswith("-"):
                parts.append("+" + chunk)
            else:
                parts.append(chunk)
        return "".join(parts)

    def __repr__(self):
        return f"Poly({self})"


# Shared constants, used all over the matrix identities.
ZERO = Poly.zero()
ONE = Poly.one()
L = Poly.var("l")
L1 = Poly.var("l1")
L2 = Poly.var("l2")
MU = Poly.var("mu")
TH = Poly.var("th")
TH1 = Poly.var("th1")
TH2 = Poly.var("th2")
