"""Normal-ordered polynomial differential operators.

A :class:`WeylElement` in ``r`` variables is a finite sum of terms
``c * t^a d^b`` with every ``t`` to the left of every ``d`` (``d_i`` is the
partial derivative in ``t_i``), so ``[d_i, t_j] = delta_ij``. Polynomials are
plain dicts ``{exponent tuple: Fraction}``.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, perm
from itertools import product
from typing import Iterable, Mapping

Exponent = tuple[int, ...]
Poly = dict[Exponent, Fraction]


def poly_add(p: Mapping[Exponent, Fraction], q: Mapping[Exponent, Fraction], c=1) -> Poly:
    out = dict(p)
    for a, v in q.items():
        s = out.get(a, 0) + c * v
        if s:
            out[a] = Fraction(s)
        else:
            out.pop(a, None)
    return out


def poly_scale(c, p: Mapping[Exponent, Fraction]) -> Poly:
    c = Fraction(c)
    return {a: c * v for a, v in p.items()} if c else {}


def monomials(r: int, max_degree: int) -> list[Exponent]:
    """All exponents with total degree <= max_degree, sorted by (degree, lex)."""
    out = [a for a in product(range(max_degree + 1), repeat=r) if sum(a) <= max_degree]
    return sorted(out, key=lambda a: (sum(a), a))


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _sub_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


class WeylElement:
    __slots__ = ("r", "terms")

    def __init__(self, r: int, terms: Mapping[tuple[Exponent, Exponent], object] | None = None):
        self.r = r
        clean = {}
        for (a, b), c in (terms or {}).items():
            c = Fraction(c)
            if c:
                if len(a) != r or len(b) != r:
                    raise ValueError("exponent length does not match the number of variables")
                clean[(tuple(a), tuple(b))] = c
        self.terms: dict[tuple[Exponent, Exponent], Fraction] = clean

    @classmethod
    def scalar(cls, r: int, c) -> "WeylElement":
        z = (0,) * r
        return cls(r, {(z, z): c})

    @classmethod
    def t(cls, r: int, i: int) -> "WeylElement":
        a = tuple(1 if k == i else 0 for k in range(r))
        return cls(r, {(a, (0,) * r): 1})

    @classmethod
    def d(cls, r: int, i: int) -> "WeylElement":
        b = tuple(1 if k == i else 0 for k in range(r))
        return cls(r, {((0,) * r, b): 1})

    @classmethod
    def multiplication(cls, r: int, p: Mapping[Exponent, Fraction]) -> "WeylElement":
        z = (0,) * r
        return cls(r, {(a, z): c for a, c in p.items()})

    def _check(self, other: "WeylElement") -> None:
        if other.r != self.r:
            raise ValueError(f"operators in {self.r} and {other.r} variables")

    def __add__(self, other: "WeylElement") -> "WeylElement":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return WeylElement(self.r, out)

    def __neg__(self) -> "WeylElement":
        return WeylElement(self.r, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "WeylElement") -> "WeylElement":
        return self + (-other)

    def __rmul__(self, c) -> "WeylElement":
        return WeylElement(self.r, {k: Fraction(c) * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, WeylElement):
            return other * self
        self._check(other)
        out: dict[tuple[Exponent, Exponent], Fraction] = {}
        for (a, b), c1 in self.terms.items():
            for (cexp, dexp), c2 in other.terms.items():
                # d^b t^c = sum_k prod_i C(b_i, k_i) c_i!/(c_i-k_i)! t^(c-k) d^(b-k)
                ranges = [range(min(bi, ci) + 1) for bi, ci in zip(b, cexp)]
                for k in product(*ranges):
                    coef = c1 * c2
                    for bi, ci, ki in zip(b, cexp, k):
                        coef *= comb(bi, ki) * perm(ci, ki)
                    key = (_add_exp(a, _sub_exp(cexp, k)), _add_exp(_sub_exp(b, k), dexp))
                    out[key] = out.get(key, 0) + coef
        return WeylElement(self.r, out)

    def commutator(self, other: "WeylElement") -> "WeylElement":
        return self * other - other * self

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.r == other.r and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.r, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def order(self) -> int:
        return max((sum(b) for _, b in self.terms), default=0)

    def apply(self, p: Mapping[Exponent, Fraction]) -> Poly:
        if p and len(next(iter(p))) != self.r:
            raise ValueError("polynomial has the wrong number of variables")
        out: Poly = {}
        for (a, b), c in self.terms.items():
            for e, v in p.items():
                if any(ei < bi for ei, bi in zip(e, b)):
                    continue
                coef = c * v
                for ei, bi in zip(e, b):
                    coef *= perm(ei, bi)
                key = _add_exp(a, _sub_exp(e, b))
                out[key] = out.get(key, 0) + coef
        return {k: v for k, v in out.items() if v}

    def __repr__(self) -> str:
        return f"WeylElement({format_operator(self)!r})"


def _format_coefficient(c: Fraction) -> str:
    return str(abs(c))


def _monomial_text(a: Exponent, b: Exponent) -> str:
    parts = []
    for sym, exps in (("t", a), ("∂", b)):
        for i, e in enumerate(exps, start=1):
            if e == 1:
                parts.append(f"{sym}{i}")
            elif e > 1:
                parts.append(f"{sym}{i}^{e}")
    return "".join(parts)


def _join(terms: Iterable[tuple[Fraction, str]]) -> str:
    out = ""
    for n, (c, mono) in enumerate(terms):
        body = _format_coefficient(c) + (f"·{mono}" if mono else "")
        if n == 0:
            out = ("−" if c < 0 else "") + body
        else:
            out += (" − " if c < 0 else " + ") + body
    return out or "0"


def format_operator(w: WeylElement) -> str:
    """Terms sorted by (total degree, lex), e.g. ``1·t1 − 2/3·t1^2∂2``."""
    keys = sorted(w.terms, key=lambda k: (sum(k[0]) + sum(k[1]), k[0], k[1]))
    return _join((w.terms[k], _monomial_text(*k)) for k in keys)


def format_poly(p: Mapping[Exponent, Fraction]) -> str:
    keys = sorted((a for a in p if p[a]), key=lambda a: (sum(a), a))
    return _join((p[a], _monomial_text(a, (0,) * len(a))) for a in keys)
