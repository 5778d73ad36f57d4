"""Kirillov form, radicals, orbit dimension and the coadjoint action."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg as la
from .algebra import LieAlgebra, Subspace, flag_basis, format_scalar, parse_scalar
from .errors import DimensionMismatch, FormatError, NotNilpotent
from .linalg import Matrix, Vector


@dataclass(frozen=True, eq=False)
class Functional:
    """Element of the dual space, coordinates in the dual basis e_i*."""

    ambient: LieAlgebra
    coords: Vector

    def __post_init__(self):
        if len(self.coords) != self.ambient.dim:
            raise DimensionMismatch(f"functional has {len(self.coords)} coordinates, algebra has dim {self.ambient.dim}")

    @classmethod
    def from_coords(cls, ambient: LieAlgebra, coords: Mapping[int, object]) -> "Functional":
        return cls(ambient, ambient.vector(coords))

    @classmethod
    def dual(cls, ambient: LieAlgebra, i: int, scale=1) -> "Functional":
        return cls(ambient, la.scale(scale, ambient.e(i)))

    @classmethod
    def zero(cls, ambient: LieAlgebra) -> "Functional":
        return cls(ambient, la.zeros(ambient.dim))

    def __call__(self, x: Sequence[Fraction]) -> Fraction:
        return la.dot(self.coords, x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Functional):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __add__(self, other: "Functional") -> "Functional":
        return Functional(self.ambient, la.add(self.coords, other.coords))

    def __sub__(self, other: "Functional") -> "Functional":
        return Functional(self.ambient, la.sub(self.coords, other.coords))

    def __rmul__(self, c) -> "Functional":
        return Functional(self.ambient, la.scale(c, self.coords))

    def form(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        """B_f(x, y) = f([x, y])."""
        return self(self.ambient.bracket(x, y))

    def __repr__(self) -> str:
        nz = {i: str(c) for i, c in enumerate(self.coords) if c}
        return f"Functional({nz})"


def functional_from_json(alg: LieAlgebra, data: Mapping) -> Functional:
    try:
        coords = data["coords"]
    except (KeyError, TypeError) as exc:
        raise FormatError('functional JSON must look like {"coords": {"index": "p/q"}}') from exc
    if not isinstance(coords, Mapping):
        raise FormatError("functional coords must be an object")
    return Functional.from_coords(alg, coords)


def functional_to_json(f: Functional) -> dict:
    return {"coords": {str(i): format_scalar(c) for i, c in enumerate(f.coords) if c != 0}}


def _require_nilpotent(alg: LieAlgebra) -> None:
    if not alg.is_nilpotent:
        raise NotNilpotent(f"{alg.name or 'algebra'} is not nilpotent; orbit-method operations need nilpotency")


@dataclass(frozen=True)
class GramMatrix:
    matrix: tuple[tuple[Fraction, ...], ...]
    functional: Functional

    @property
    def rank(self) -> int:
        return la.rank(self.matrix)

    def rows(self) -> Matrix:
        return [list(r) for r in self.matrix]


def gram_matrix(f: Functional) -> GramMatrix:
    alg = f.ambient
    _require_nilpotent(alg)
    n = alg.dim
    rows = [[la.ZERO] * n for _ in range(n)]
    for (i, j), coeffs in alg.table.items():
        rows[i][j] = sum((c * f.coords[k] for k, c in coeffs.items()), la.ZERO)
    return GramMatrix(tuple(map(tuple, rows)), f)


def radical(f: Functional) -> Subspace:
    """{x : f([x, y]) = 0 for all y}."""
    g = gram_matrix(f)
    # x^T M = 0
    rad = Subspace.span(f.ambient, la.nullspace(la.transpose(g.rows()), f.ambient.dim))
    assert rad.is_subalgebra, "radical of a functional must be a subalgebra"
    return rad


def orbit_dim(f: Functional) -> int:
    r = gram_matrix(f).rank
    if not f.ambient.is_graded:
        assert r % 2 == 0, "alternating form of odd rank"
    return r


def weight(f: Functional) -> int:
    return orbit_dim(f) // 2


def exp_ad(alg: LieAlgebra, x: Sequence[Fraction]) -> Matrix:
    """exp(ad x) as the terminating series sum (ad x)^j / j!."""
    n = alg.dim
    a = alg.ad(x)
    total = la.identity(n)
    power = la.identity(n)
    for j in range(1, n + 1):
        power = la.matmul(power, a)
        if all(c == 0 for row in power for c in row):
            return total
        power = [[c / j for c in row] for row in power]
        total = [[s + p for s, p in zip(rs, rp)] for rs, rp in zip(total, power)]
    raise NotNilpotent("ad x is not nilpotent; the exponential series does not terminate")


def coadjoint_act(x: Sequence[Fraction], f: Functional) -> Functional:
    """exp(x) . f, i.e. the functional y -> f(exp(-ad x) y)."""
    alg = f.ambient
    _require_nilpotent(alg)
    e = exp_ad(alg, la.scale(-1, x))
    out = Functional(alg, la.vecmat(f.coords, e))
    assert alg.is_graded or orbit_dim(out) == orbit_dim(f), "coadjoint action changed the orbit dimension"
    return out


def orbit_sample(f: Functional, params: Sequence[tuple[int, object]]) -> Functional:
    """(exp(t_1 e_i1) ... exp(t_k e_ik)) . f; the rightmost factor acts first."""
    alg = f.ambient
    out = f
    for idx, t in reversed(list(params)):
        if not 0 <= int(idx) < alg.dim:
            raise FormatError(f"basis index {idx} out of range")
        out = coadjoint_act(la.scale(parse_scalar(t), alg.e(int(idx))), out)
    return out


@dataclass(frozen=True)
class DarbouxBasis:
    pairs: tuple[tuple[Vector, Vector], ...]
    kernel: tuple[Vector, ...]

    @property
    def n(self) -> int:
        return len(self.pairs)

    def change_of_basis(self) -> Matrix:
        """Columns x_1..x_n, y_1..y_n, then the kernel vectors."""
        cols = [x for x, _ in self.pairs] + [y for _, y in self.pairs] + list(self.kernel)
        return la.transpose([list(c) for c in cols])


def darboux_basis(f: Functional) -> DarbouxBasis:
    """Symplectic Gram-Schmidt for B_f.

    Vectors are visited in the flag-adapted order of :func:`flag_basis`
    (deepest term of the lower central series first); the first vector with
    any partner is paired with its first partner. Starting from the deep end
    makes the brackets [x_i, y_j] land in the center whenever that is possible
    for the shipped families, which is what keeps the Weyl relations exact in
    the induced realization.
    """
    alg = f.ambient
    _require_nilpotent(alg)
    work = list(flag_basis(alg))
    form = f.form
    pairs = []
    while True:
        hit = None
        for a, x in enumerate(work):
            for b, y in enumerate(work):
                if b != a and form(x, y) != 0:
                    hit = (a, b)
                    break
            if hit:
                break
        if hit is None:
            break
        a, b = hit
        x = work[a]
        y = la.scale(1 / form(x, work[b]), work[b])
        rest = []
        for k, w in enumerate(work):
            if k in (a, b):
                continue
            w = la.add(la.sub(w, la.scale(form(w, y), x)), la.scale(form(w, x), y))
            rest.append(w)
        pairs.append((x, y))
        work = rest
    return DarbouxBasis(tuple(pairs), tuple(work))


def symplectic_block(n: int, dim: int) -> Matrix:
    """[[0, I_n], [-I_n, 0]] padded with zeros to dim x dim."""
    m = [[la.ZERO] * dim for _ in range(dim)]
    for i in range(n):
        m[i][n + i] = la.ONE
        m[n + i][i] = -la.ONE
    return m
