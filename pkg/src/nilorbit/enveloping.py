"""Induced modules U(g) (x)_{U(p)} Cv realized as differential operators.

The module has the PBW basis ``e_1^a1 ... e_r^ar (x) v`` over a complement
``e_1..e_r`` of the polarisation ``p``; the monomial ``t^a`` stands for that
vector. Each basis element of ``g`` acts by a polynomial differential
operator, which is recovered from the straightened action on low-degree
monomials and then checked against the straightening on higher degrees.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from . import linalg as la
from .algebra import LieAlgebra, Subspace, center
from .coadjoint import DarbouxBasis, Functional
from .errors import NilorbitError, PreconditionError
from .polarisation import is_polarisation
from .weyl import Exponent, Poly, WeylElement, monomials, poly_add


class RepresentationError(NilorbitError):
    """Internal consistency failure of a realization (an upstream bug, not bad input)."""


class _Straightener:
    """Left action of g on the PBW basis of the induced module.

    All functions return polys ``{exponent: coefficient}``. Results are
    memoized per (element, monomial) for the lifetime of one instance.
    """

    def __init__(self, alg: LieAlgebra, p: Subspace, f: Functional, comp: list[int]):
        self.alg, self.f, self.comp = alg, f, comp
        self.r = len(comp)
        self.prows = list(p.rows)
        basis = [alg.e(i) for i in comp] + [list(row) for row in self.prows]
        self._inv = la.inverse([list(b) for b in basis])
        self.left_mult = lru_cache(maxsize=None)(self._left_mult)
        self.act_prow = lru_cache(maxsize=None)(self._act_prow)
        self.act_basis = lru_cache(maxsize=None)(self._act_basis)

    def split(self, w: Sequence[Fraction]) -> tuple[la.Vector, la.Vector]:
        """Coordinates of w over (complement elements, p rows)."""
        c = la.vecmat(w, self._inv)
        return c[: self.r], c[self.r:]

    def _unit(self, j: int) -> Exponent:
        return tuple(1 if k == j else 0 for k in range(self.r))

    def left_mult_poly(self, j: int, poly: Poly) -> Poly:
        out: Poly = {}
        for b, c in poly.items():
            out = poly_add(out, self.left_mult(j, b), c)
        return out

    def act_vec(self, w: Sequence[Fraction], a: Exponent) -> Poly:
        cc, cp = self.split(w)
        out: Poly = {}
        for j, c in enumerate(cc):
            if c:
                out = poly_add(out, self.left_mult(j, a), c)
        for k, c in enumerate(cp):
            if c:
                out = poly_add(out, self.act_prow(k, a), c)
        return out

    def _left_mult(self, j: int, b: Exponent) -> Poly:
        """e_j . e^b (x) v."""
        first = next((i for i, x in enumerate(b) if x), None)
        if first is None or j <= first:
            return {tuple(x + y for x, y in zip(b, self._unit(j))): Fraction(1)}
        i = first
        rest = tuple(x - y for x, y in zip(b, self._unit(i)))
        # e_j e_i = e_i e_j + [e_j, e_i]
        out = self.left_mult_poly(i, self.left_mult(j, rest))
        br = self.alg.bracket(self.alg.e(self.comp[j]), self.alg.e(self.comp[i]))
        return poly_add(out, self.act_vec(br, rest))

    def _act_prow(self, k: int, a: Exponent) -> Poly:
        """x . e^a (x) v for x the k-th row of p."""
        x = self.prows[k]
        first = next((i for i, y in enumerate(a) if y), None)
        if first is None:
            val = self.f(x)
            return {a: val} if val else {}
        i = first
        rest = tuple(y - z for y, z in zip(a, self._unit(i)))
        # x e_i = e_i x + [x, e_i]
        out = self.left_mult_poly(i, self.act_prow(k, rest))
        br = self.alg.bracket(x, self.alg.e(self.comp[i]))
        return poly_add(out, self.act_vec(br, rest))

    def _act_basis(self, idx: int, a: Exponent) -> Poly:
        return self.act_vec(self.alg.e(idx), a)


def _fit_operator(action, r: int, order: int) -> WeylElement:
    """Write a linear map on polynomials as sum_b q_b(t) d^b / b!.

    ``q_b = L(t^b) - sum_{c < b} q_c C(b, c) t^(b - c)``, computed for every
    |b| <= order.
    """
    q: dict[Exponent, Poly] = {}
    for b in monomials(r, order):
        acc = dict(action(b))
        for c, qc in q.items():
            if all(ci <= bi for ci, bi in zip(c, b)) and c != b:
                mult = 1
                for ci, bi in zip(c, b):
                    mult *= comb(bi, ci)
                shift = tuple(bi - ci for ci, bi in zip(c, b))
                acc = poly_add(acc, {tuple(x + s for x, s in zip(e, shift)): v for e, v in qc.items()}, -mult)
        if acc:
            q[b] = acc
    terms = {}
    for b, poly in q.items():
        bfact = 1
        for bi in b:
            bfact *= factorial(bi)
        for a, c in poly.items():
            terms[(a, b)] = terms.get((a, b), 0) + c / bfact
    return WeylElement(r, terms)


@dataclass
class DiffOpRep:
    algebra: LieAlgebra
    polarisation: Subspace
    functional: Functional
    complement: list[int]
    rho: list[WeylElement]
    _straightener: _Straightener | None = field(default=None, repr=False, compare=False)

    @property
    def r(self) -> int:
        return len(self.complement)

    def image(self, u: Sequence[Fraction]) -> WeylElement:
        out = WeylElement.scalar(self.r, 0)
        for i, c in enumerate(u):
            if c:
                out = out + c * self.rho[i]
        return out

    def straightened(self, idx: int, a: Exponent) -> Poly:
        """Action of basis element idx on t^a by direct PBW straightening."""
        if self._straightener is None:
            self._straightener = _Straightener(self.algebra, self.polarisation, self.functional, self.complement)
        return self._straightener.act_basis(idx, a)


def induce(f: Functional, p: Subspace, certify_degree: int | None = None) -> DiffOpRep:
    """Realize Ind_p^g {p, f} on polynomials in r = codim p variables."""
    alg = f.ambient
    if alg.is_graded:
        raise PreconditionError("induce handles ordinary Lie algebras; pass the even part of a superalgebra")
    if not is_polarisation(p, f):
        raise PreconditionError("p is not a polarisation of f")
    comp = p.complement_indices()
    st = _Straightener(alg, p, f, comp)
    r = len(comp)
    cls = alg.nilpotency_class or 1
    # straightening recursion depth grows with the monomial degree
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))
    rho = []
    for idx in range(alg.dim):
        w = _fit_operator(lambda b, idx=idx: st.act_basis(idx, b), r, cls + 1)
        if w.order >= cls:
            raise RepresentationError(f"operator for {alg.basis[idx]} has order {w.order} >= nilpotency class {cls}")
        rho.append(w)
    rep = DiffOpRep(alg, p, f, comp, rho, st)
    top = certify_degree if certify_degree is not None else cls + 2
    for idx in range(alg.dim):
        for a in monomials(r, top):
            if rho[idx].apply({a: Fraction(1)}) != st.act_basis(idx, a):
                raise RepresentationError(f"operator for {alg.basis[idx]} disagrees with straightening on t^{a}")
    ok, witness = check_rep(rep)
    if not ok:
        raise RepresentationError(f"realization is not a homomorphism on {witness}")
    for z in _center_rows(alg):
        if rep.image(z) != WeylElement.scalar(r, f(z)):
            raise RepresentationError("a central element does not act by its f-value")
    return rep


def _center_rows(alg):
    return center(alg).rows


def apply(rep: DiffOpRep, u: Sequence[Fraction], q: Poly) -> Poly:
    if len(u) != rep.algebra.dim:
        raise PreconditionError("element has the wrong dimension")
    if q and len(next(iter(q))) != rep.r:
        raise PreconditionError(f"polynomial must be in {rep.r} variables")
    return rep.image(u).apply(q)


def check_rep(rep: DiffOpRep) -> tuple[bool, tuple[str, str] | None]:
    """rho([e_i, e_j]) == [rho(e_i), rho(e_j)] for every pair i < j."""
    alg = rep.algebra
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            lhs = rep.image(alg.bracket_basis(i, j))
            if rep.rho[i].commutator(rep.rho[j]) != lhs:
                return False, (alg.basis[i], alg.basis[j])
    return True, None


def weyl_generators(rep: DiffOpRep, db: DarbouxBasis) -> list[tuple[WeylElement, WeylElement]]:
    """Images (rho(x_i), rho(y_i)) of a Darboux basis.

    Raises unless [X_i, Y_j] = delta_ij and [X_i, X_j] = [Y_i, Y_j] = 0 hold
    exactly.
    """
    r = rep.r
    gens = [(rep.image(x), rep.image(y)) for x, y in db.pairs]
    one, zero = WeylElement.scalar(r, 1), WeylElement.scalar(r, 0)
    for i, (xi, yi) in enumerate(gens):
        for j, (xj, yj) in enumerate(gens):
            if xi.commutator(yj) != (one if i == j else zero):
                raise RepresentationError(f"[X_{i + 1}, Y_{j + 1}] != delta")
            if j > i and (xi.commutator(xj) != zero or yi.commutator(yj) != zero):
                raise RepresentationError(f"generators {i + 1} and {j + 1} do not commute")
    return gens


@dataclass(frozen=True)
class Eigenspace:
    dim: int
    basis: list[Poly]
    degree_cap: int


def eigenspace(rep: DiffOpRep, k: Subspace, f: Functional | None = None, degree_cap: int = 8) -> Eigenspace:
    """{q : deg q <= cap, (rho(x) - f(x)) q = 0 for x in k}."""
    f = f or rep.functional
    if not all(f.form(a, b) == 0 for a in k.rows for b in k.rows):
        raise PreconditionError("f must vanish on [k, k]")
    dom = monomials(rep.r, degree_cap)
    ops = [rep.image(x) - WeylElement.scalar(rep.r, f(x)) for x in k.rows]
    images = [[op.apply({a: Fraction(1)}) for a in dom] for op in ops]
    rows: list[list[Fraction]] = []
    for per_op in images:
        support = sorted({e for img in per_op for e in img})
        for e in support:
            rows.append([img.get(e, la.ZERO) for img in per_op])
    kern = la.nullspace(rows, len(dom)) if rows else [la.unit(len(dom), i) for i in range(len(dom))]
    basis = [{a: c for a, c in zip(dom, v) if c} for v in kern]
    return Eigenspace(len(basis), basis, degree_cap)
