"""Finite-dimensional (super) Lie algebras given by rational structure constants."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from . import linalg as la
from .errors import DimensionMismatch, FormatError, NilorbitError, NotNilpotent
from .linalg import Matrix, Vector

_RATIONAL = re.compile(r"^\s*[+-]?\d+\s*(/\s*\d+\s*)?$")


def parse_scalar(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an integer into a reduced Fraction."""
    if isinstance(value, bool):
        raise FormatError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if not isinstance(value, str) or not _RATIONAL.match(value):
        raise FormatError(f"not a rational string 'p/q' or 'p': {value!r}")
    num, _, den = value.replace(" ", "").partition("/")
    if den and int(den) == 0:
        raise FormatError(f"zero denominator in {value!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_scalar(c: Fraction) -> str:
    return str(Fraction(c))


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Structure constants ``[e_i, e_j] = sum_k c[i, j][k] e_k``.

    Build instances with :meth:`from_brackets`, which takes the entries with
    ``i <= j`` and fills in the rest by graded antisymmetry. ``table`` always
    holds the completed sparse table.
    """

    name: str
    basis: tuple[str, ...]
    parity: tuple[int, ...]
    table: Mapping[tuple[int, int], Mapping[int, Fraction]] = field(repr=False)

    @classmethod
    def from_brackets(
        cls,
        name: str,
        basis: Sequence[str],
        brackets: Mapping[tuple[int, int], Mapping[int, object]],
        parity: Sequence[int] | None = None,
    ) -> "LieAlgebra":
        n = len(basis)
        if n < 1:
            raise FormatError("algebra must have positive dimension")
        parity = tuple(parity) if parity is not None else (0,) * n
        if len(parity) != n or any(p not in (0, 1) for p in parity):
            raise FormatError("parity must be a list of 0/1 of length dim")
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), coeffs in brackets.items():
            if not (0 <= i < n and 0 <= j < n):
                raise FormatError(f"bracket index out of range: ({i}, {j})")
            if i > j:
                raise FormatError(f"brackets must be listed with i <= j, got ({i}, {j})")
            entry = {}
            for k, c in coeffs.items():
                k = int(k)
                if not 0 <= k < n:
                    raise FormatError(f"coefficient index out of range: {k}")
                c = parse_scalar(c)
                if c != 0:
                    entry[k] = c
            if not entry:
                continue
            table[(i, j)] = entry
            if i != j:
                sign = 1 if parity[i] * parity[j] else -1
                table[(j, i)] = {k: sign * c for k, c in entry.items()}
        return cls(name, tuple(basis), parity, table)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_graded(self) -> bool:
        return any(self.parity)

    def even_indices(self) -> list[int]:
        return [i for i, p in enumerate(self.parity) if p == 0]

    def odd_indices(self) -> list[int]:
        return [i for i, p in enumerate(self.parity) if p == 1]

    @cached_property
    def _dense(self) -> list[list[Vector]]:
        n = self.dim
        out = [[la.zeros(n)] * n for _ in range(n)]
        for (i, j), coeffs in self.table.items():
            v = [la.ZERO] * n
            for k, c in coeffs.items():
                v[k] = c
            out[i][j] = tuple(v)
        return out

    def bracket_basis(self, i: int, j: int) -> Vector:
        return self._dense[i][j]

    def bracket(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
        n = self.dim
        if len(u) != n or len(v) != n:
            raise DimensionMismatch(f"expected vectors of length {n}, got {len(u)} and {len(v)}")
        out = [la.ZERO] * n
        for (i, j), coeffs in self.table.items():
            a = u[i] * v[j]
            if a == 0:
                continue
            for k, c in coeffs.items():
                out[k] += a * c
        return tuple(out)

    def ad(self, x: Sequence[Fraction]) -> Matrix:
        """Matrix of ``ad x``; column j holds the coordinates of ``[x, e_j]``."""
        n = self.dim
        if len(x) != n:
            raise DimensionMismatch(f"expected a vector of length {n}, got {len(x)}")
        cols = [self.bracket(x, la.unit(n, j)) for j in range(n)]
        return [[cols[j][k] for j in range(n)] for k in range(n)]

    def vector(self, coords: Mapping[int, object]) -> Vector:
        v = [la.ZERO] * self.dim
        for k, c in coords.items():
            k = int(k)
            if not 0 <= k < self.dim:
                raise FormatError(f"index {k} out of range for dim {self.dim}")
            v[k] = parse_scalar(c)
        return tuple(v)

    def e(self, i: int) -> Vector:
        return la.unit(self.dim, i)

    def whole(self) -> "Subspace":
        return Subspace.span(self, [self.e(i) for i in range(self.dim)])

    def zero(self) -> "Subspace":
        return Subspace.span(self, [])

    @cached_property
    def lower_central_series(self) -> list["Subspace"]:
        return lower_central_series(self)

    @property
    def is_nilpotent(self) -> bool:
        return self.lower_central_series[-1].dim == 0

    @property
    def nilpotency_class(self) -> int | None:
        if not self.is_nilpotent:
            return None
        return len(self.lower_central_series) - 1

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name!r}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of an algebra stored by its canonical RREF basis."""

    ambient: LieAlgebra
    rows: tuple[Vector, ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, ambient: LieAlgebra, vectors: Iterable[Sequence[Fraction]]) -> "Subspace":
        vectors = list(vectors)
        for v in vectors:
            if len(v) != ambient.dim:
                raise DimensionMismatch(f"vector of length {len(v)} in algebra of dim {ambient.dim}")
        rows, pivots = la.rref(vectors, ambient.dim) if vectors else ([], [])
        return cls(ambient, tuple(rows), tuple(pivots))

    @classmethod
    def of_basis(cls, ambient: LieAlgebra, indices: Iterable[int]) -> "Subspace":
        return cls.span(ambient, [ambient.e(i) for i in indices])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient.dim == other.ambient.dim and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __contains__(self, v: Sequence[Fraction]) -> bool:
        return la.in_span(self.rows, v)

    def contains(self, other: "Subspace") -> bool:
        return all(r in self for r in other.rows)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.ambient, self.rows + other.rows)

    def intersect(self, other: "Subspace") -> "Subspace":
        # solve a.rows = b.other.rows
        if not self.rows or not other.rows:
            return self.ambient.zero()
        stacked = [list(r) for r in self.rows] + [[-c for c in r] for r in other.rows]
        kern = la.nullspace(la.transpose(stacked), len(stacked))
        vecs = [la.vecmat(k[: self.dim], [list(r) for r in self.rows]) for k in kern]
        return Subspace.span(self.ambient, vecs)

    @cached_property
    def is_subalgebra(self) -> bool:
        return is_subalgebra(self.ambient, self)

    def is_ideal(self) -> bool:
        alg = self.ambient
        return all(alg.bracket(alg.e(i), r) in self for i in range(alg.dim) for r in self.rows)

    def complement_indices(self) -> list[int]:
        """Lexicographically first basis indices completing this subspace."""
        chosen: list[int] = []
        current = list(self.rows)
        r = len(current)
        for i in range(self.ambient.dim):
            if r == self.ambient.dim:
                break
            trial = current + [self.ambient.e(i)]
            if la.rank(trial) > r:
                current = trial
                chosen.append(i)
                r += 1
        return chosen

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, rows={[[str(c) for c in r] for r in self.rows]})"


@dataclass
class Violation:
    axiom: str
    triple: tuple[str, str, str]
    detail: str


@dataclass
class ValidationReport:
    violations: list[Violation]
    nilpotency_class: int | None
    lcs_dims: list[int]

    @property
    def ok(self) -> bool:
        return not self.violations

    def violated(self, axiom: str) -> list[Violation]:
        return [v for v in self.violations if v.axiom == axiom]


def validate(alg: LieAlgebra) -> ValidationReport:
    n, par, names = alg.dim, alg.parity, alg.basis
    violations: list[Violation] = []
    for (i, j), coeffs in sorted(alg.table.items()):
        if i > j:
            continue
        for k in sorted(coeffs):
            if par[k] != (par[i] + par[j]) % 2:
                violations.append(
                    Violation("grading", (names[i], names[j], names[k]),
                              f"[{names[i]},{names[j]}] has a {names[k]} component of the wrong parity")
                )
    for i in range(n):
        for j in range(i, n):
            # [e_j, e_i] = sign [e_i, e_j]
            sign = 1 if par[i] * par[j] else -1
            lhs, rhs = alg.bracket_basis(i, j), alg.bracket_basis(j, i)
            for k in range(n):
                if rhs[k] != sign * lhs[k]:
                    violations.append(
                        Violation("antisymmetry", (names[i], names[j], names[k]),
                                  f"coefficient of {names[k]} in [{names[i]},{names[j]}] breaks graded skew-symmetry")
                    )
                    break
    for a, b, c in combinations_with_replacement(range(n), 3):
        if jacobi_defect(alg, alg.e(a), alg.e(b), alg.e(c), par[a], par[b]) != la.zeros(n):
            violations.append(
                Violation("jacobi", (names[a], names[b], names[c]), "graded Jacobi identity fails")
            )
    lcs = alg.lower_central_series
    return ValidationReport(violations, alg.nilpotency_class, [s.dim for s in lcs])


def jacobi_defect(alg: LieAlgebra, a, b, c, pa: int = 0, pb: int = 0) -> Vector:
    """[a,[b,c]] - [[a,b],c] - (-1)^{|a||b|} [b,[a,c]] for homogeneous a, b."""
    sign = -1 if pa * pb else 1
    br = alg.bracket
    return la.sub(la.sub(br(a, br(b, c)), br(br(a, b), c)), la.scale(sign, br(b, br(a, c))))


def lower_central_series(alg: LieAlgebra) -> list[Subspace]:
    """g = g^0 > g^1 > ... ending at 0, or at the first repeated term."""
    terms = [alg.whole()]
    while terms[-1].dim:
        prev = terms[-1]
        nxt = Subspace.span(alg, [alg.bracket(alg.e(i), r) for i in range(alg.dim) for r in prev.rows])
        if nxt.dim == prev.dim:
            break
        terms.append(nxt)
    return terms


def center(alg: LieAlgebra) -> Subspace:
    n = alg.dim
    eqs = []
    for j in range(n):
        for k in range(n):
            eqs.append([alg.bracket_basis(i, j)[k] for i in range(n)])
    return Subspace.span(alg, la.nullspace(eqs, n))


def is_subalgebra(alg: LieAlgebra, s: Subspace) -> bool:
    if s.ambient.dim != alg.dim:
        raise DimensionMismatch("subspace does not live in this algebra")
    rows = s.rows
    return all(alg.bracket(rows[a], rows[b]) in s for a in range(len(rows)) for b in range(a, len(rows)))


def _nm_units(m: int) -> list[tuple[int, int]]:
    return [(i, i + d) for d in range(1, m) for i in range(1, m - d + 1)]


def _unit_name(prefix: str, i: int, j: int, wide: bool) -> str:
    return f"{prefix}{i},{j}" if wide else f"{prefix}{i}{j}"


def build_n_m(m: int) -> LieAlgebra:
    """Strictly upper triangular m x m matrices, basis E_ij ordered by superdiagonal."""
    if m < 2:
        raise NilorbitError("n_m needs m >= 2")
    units = _nm_units(m)
    index = {u: k for k, u in enumerate(units)}
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for a, (i, j) in enumerate(units):
        for b, (k, l) in enumerate(units):
            if a > b:
                continue
            coeffs: dict[int, Fraction] = {}
            if j == k:
                coeffs[index[(i, l)]] = coeffs.get(index[(i, l)], 0) + Fraction(1)
            if l == i:
                coeffs[index[(k, j)]] = coeffs.get(index[(k, j)], 0) - Fraction(1)
            if coeffs:
                brackets[(a, b)] = coeffs
    names = [_unit_name("E", i, j, m > 9) for i, j in units]
    return LieAlgebra.from_brackets(f"n_{m}", names, brackets)


def flag_basis(alg: LieAlgebra) -> list[Vector]:
    """Basis adapted to the lower central series, deepest term first.

    Every prefix spans an ideal: each new vector is taken from some term g^k
    on top of a space already containing g^(k+1). Within a term the RREF rows
    are scanned lowest pivot first.
    """
    if not alg.is_nilpotent:
        raise NotNilpotent(f"{alg.name or 'algebra'} is not nilpotent")
    chosen: list[Vector] = []
    for term in reversed(alg.lower_central_series[:-1]):
        for row in term.rows:
            if la.rank(chosen + [row]) > len(chosen):
                chosen.append(row)
    return chosen


def algebra_from_json(data: Mapping) -> LieAlgebra:
    try:
        dim = int(data["dim"])
        basis = list(data.get("basis") or [f"e{i}" for i in range(dim)])
        parity = data.get("parity")
        raw = data.get("brackets", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed algebra JSON: {exc}") from exc
    if len(basis) != dim:
        raise FormatError(f"basis has {len(basis)} names but dim is {dim}")
    brackets: dict[tuple[int, int], dict] = {}
    for entry in raw:
        try:
            key = (int(entry["i"]), int(entry["j"]))
            coeffs = dict(entry["coeffs"])
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"malformed bracket entry {entry!r}") from exc
        if key in brackets:
            raise FormatError(f"bracket ({key[0]}, {key[1]}) listed twice")
        brackets[key] = coeffs
    return LieAlgebra.from_brackets(str(data.get("name", "")), basis, brackets, parity)


def algebra_to_json(alg: LieAlgebra) -> dict:
    brackets = []
    for (i, j) in sorted(alg.table):
        if i > j:
            continue
        coeffs = {str(k): format_scalar(c) for k, c in sorted(alg.table[(i, j)].items())}
        brackets.append({"i": i, "j": j, "coeffs": coeffs})
    return {
        "name": alg.name,
        "dim": alg.dim,
        "parity": list(alg.parity),
        "basis": list(alg.basis),
        "brackets": brackets,
    }
