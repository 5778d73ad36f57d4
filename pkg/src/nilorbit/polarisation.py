"""Subordinate subalgebras, polarisations and affine slices f + k^T."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from . import linalg as la
from .algebra import Subspace, center, flag_basis
from .coadjoint import Functional, exp_ad, gram_matrix, orbit_dim, radical, weight
from .errors import PreconditionError


def _pairwise_values(k: Subspace, f: Functional) -> list[list[Fraction]]:
    return [[f.form(a, b) for b in k.rows] for a in k.rows]


def is_subordinate(k: Subspace, f: Functional) -> bool:
    if not k.is_subalgebra:
        raise PreconditionError("subordinate test needs a subalgebra")
    return all(v == 0 for row in _pairwise_values(k, f) for v in row)


def _restricted_radical(k: Subspace, f: Functional) -> Subspace:
    """{x in k : f([x, k]) = 0}."""
    if not k.rows:
        return k
    g = _pairwise_values(k, f)
    coeffs = la.nullspace(la.transpose(g), k.dim)
    return Subspace.span(k.ambient, [la.vecmat(c, [list(r) for r in k.rows]) for c in coeffs])


def default_flag(alg) -> list[Subspace]:
    basis = flag_basis(alg)
    return [Subspace.span(alg, basis[: i + 1]) for i in range(len(basis))]


def _check_flag(alg, flag: Sequence[Subspace]) -> None:
    if len(flag) != alg.dim:
        raise PreconditionError(f"flag must have {alg.dim} members, got {len(flag)}")
    prev = alg.zero()
    for i, s in enumerate(flag, start=1):
        if s.dim != i:
            raise PreconditionError(f"flag member {i} has dim {s.dim}, expected {i}")
        if not s.contains(prev):
            raise PreconditionError(f"flag member {i} does not contain member {i - 1}")
        if not s.is_ideal():
            raise PreconditionError(f"flag member {i} is not an ideal")
        prev = s


def vergne_polarisation(f: Functional, flag: Sequence[Subspace] | None = None) -> Subspace:
    """Sum of the radicals of f restricted to each member of a flag of ideals."""
    alg = f.ambient
    if flag is None:
        flag = default_flag(alg)
    else:
        _check_flag(alg, flag)
    p = alg.zero()
    for member in flag:
        p = p + _restricted_radical(member, f)
    assert is_polarisation(p, f), "flag construction did not produce a polarisation"
    return p


def is_polarisation(p: Subspace, f: Functional) -> bool:
    if not p.is_subalgebra:
        return False
    if not is_subordinate(p, f):
        return False
    rad = radical(f)
    if 2 * p.dim != f.ambient.dim + rad.dim:
        return False
    return p.contains(rad)


@dataclass(frozen=True)
class AffineSlice:
    """The affine space f + k^T = {l : l(x) = f(x) for x in k}."""

    base: Functional
    k: Subspace
    irreducible: bool = True

    @property
    def dim(self) -> int:
        return self.base.ambient.dim - self.k.dim

    def __contains__(self, lam: Functional) -> bool:
        return all(lam(r) == self.base(r) for r in self.k.rows)


def affine_slice(f: Functional, k: Subspace) -> AffineSlice:
    return AffineSlice(f, k)


@dataclass(frozen=True)
class Meeting:
    """Whether a coadjoint orbit meets an affine slice."""

    status: str  # confirmed / refuted / inconclusive
    how: str
    witness: Functional | None = None
    z_dim: int | None = None  # exact dimension of the intersection when known


def _column_space(m) -> list[la.Vector]:
    return la.rref(la.transpose([list(r) for r in m]))[0] if m else []


def affine_orbit_directions(mu: Functional) -> list[la.Vector] | None:
    """Directions L with orbit(mu) = mu + L, or None when the orbit is not affine.

    The tangent space at l is the column space of the Gram matrix of l. If
    every point of mu + L has its tangent space inside L, the orbit flows stay
    in mu + L, and a closed orbit of full dimension fills it.
    """
    alg = mu.ambient
    directions = _column_space(gram_matrix(mu).matrix)
    for d in directions:
        for col in _column_space(gram_matrix(Functional(alg, d)).matrix):
            if not la.in_span(directions, col):
                return None
    return directions


_SEARCH_STEPS = (Fraction(1), Fraction(-1), Fraction(2), Fraction(-2), Fraction(1, 2), Fraction(-1, 2))


def _reachability_search(sl: AffineSlice, mu: Functional) -> Functional | None:
    """Bounded search over products of at most two one-parameter subgroups."""
    alg = mu.ambient
    mats = {}
    for i, t in product(range(alg.dim), _SEARCH_STEPS):
        mats[(i, t)] = exp_ad(alg, la.scale(-t, alg.e(i)))
    keys = list(mats)
    for key in keys:
        lam = Functional(alg, la.vecmat(mu.coords, mats[key]))
        if lam in sl:
            return lam
    for k1, k2 in product(keys, keys):
        if k1[0] == k2[0]:
            continue
        lam = Functional(alg, la.vecmat(la.vecmat(mu.coords, mats[k2]), mats[k1]))
        if lam in sl:
            return lam
    return None


def slice_meets_orbit(sl: AffineSlice, mu: Functional) -> Meeting:
    alg = mu.ambient
    if mu in sl:
        return _with_affine_dim(sl, mu, Meeting("confirmed", "orbit representative lies in the slice", mu))
    cen = sl.k.intersect(center(alg))
    for c in cen.rows:
        if mu(c) != sl.base(c):
            return Meeting("refuted", "central character differs on k", z_dim=None)
    directions = affine_orbit_directions(mu)
    if directions is not None:
        a = [[la.dot(d, r) for d in directions] for r in sl.k.rows]
        b = [sl.base(r) - mu(r) for r in sl.k.rows]
        s = la.solve(a, b, len(directions))
        if s is None:
            return Meeting("refuted", "affine orbit misses the slice")
        lam = Functional(alg, la.add(mu.coords, la.vecmat(s, [list(d) for d in directions])))
        return Meeting("confirmed", "solved on the affine orbit", lam, len(directions) - la.rank(a))
    lam = _reachability_search(sl, mu)
    if lam is not None:
        return Meeting("confirmed", "reached by bounded parameter search", lam)
    return Meeting("inconclusive", "orbit is not affine and the bounded search found no point")


def _with_affine_dim(sl: AffineSlice, mu: Functional, m: Meeting) -> Meeting:
    directions = affine_orbit_directions(mu)
    if directions is None:
        return m
    a = [[la.dot(d, r) for d in directions] for r in sl.k.rows]
    z = len(directions) - (la.rank(a) if a else 0)
    return Meeting(m.status, m.how + "; orbit is affine", m.witness, z)


@dataclass(frozen=True)
class SliceVerdict:
    status: str  # lagrangian_unique_module / empty / not_lagrangian / inconclusive
    detail: str
    module_count: int | None = None
    slice_dim: int = 0
    orbit_dim: int = 0
    intersection_dim: int | None = None
    meeting: str = ""

    def __post_init__(self):
        assert (self.module_count == 1) == (self.status == "lagrangian_unique_module")


def slice_verdict(f: Functional, k: Subspace, orbit_of: Functional | None = None) -> SliceVerdict:
    """Decide what is decidable about Z = orbit(orbit_of) meet (f + k^T)."""
    if orbit_of is None:
        orbit_of = f
    if not is_subordinate(k, f):
        raise PreconditionError("f must vanish on [k, k]")
    sl = affine_slice(f, k)
    big_d = orbit_dim(orbit_of)
    meet = slice_meets_orbit(sl, orbit_of)
    common = dict(slice_dim=sl.dim, orbit_dim=big_d, meeting=meet.status)

    def verdict(status, detail, count=None, z=meet.z_dim):
        return SliceVerdict(status, detail, count, intersection_dim=z, **common)

    if meet.status == "refuted":
        return verdict("empty", f"Z is empty ({meet.how}); no simple module has a k-eigenvector", 0, 0)
    if meet.status == "confirmed":
        if big_d == 0:
            return verdict("lagrangian_unique_module", "the orbit is a point lying in the slice", 1, 0)
        if k.dim == 0:
            return verdict("not_lagrangian", "k = 0, so Z is the whole orbit", z=big_d)
        if is_polarisation(k, f):
            return verdict("lagrangian_unique_module",
                           "k is a polarisation: Z = f + k^T, irreducible of half the orbit dimension",
                           1, sl.dim)
        if meet.z_dim is not None:
            if 2 * meet.z_dim == big_d:
                return verdict("lagrangian_unique_module",
                               "Z is an affine subspace of half the orbit dimension", 1)
            return verdict("not_lagrangian", f"Z is affine of dimension {meet.z_dim}, orbit has dimension {big_d}")
        if center(f.ambient).contains(k):
            return verdict("not_lagrangian", "k is central, so Z is the whole orbit", z=big_d)
    return verdict("inconclusive",
                   f"slice dim {sl.dim}, orbit dim {big_d}, weight {weight(orbit_of)}; meeting: {meet.how}")
