"""Nilpotent Lie superalgebras: the sets Lambda and Lambda', graded
polarisations, and the shape of graded-primitive quotients."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .algebra import LieAlgebra, Subspace, _unit_name
from .coadjoint import Functional, radical, weight
from .errors import NilorbitError, PreconditionError
from .polarisation import vergne_polarisation

THEOREM = "theorem_11_3"
HEURISTIC = "bell_musson_heuristic"


def even_part(alg: LieAlgebra) -> tuple[LieAlgebra, list[int]]:
    """The even subalgebra with its own 0-based basis, plus the index map into alg."""
    idx = alg.even_indices()
    if not idx:
        raise PreconditionError("algebra has no even part")
    pos = {g: a for a, g in enumerate(idx)}
    brackets = {}
    for a, i in enumerate(idx):
        for b in range(a, len(idx)):
            j = idx[b]
            coeffs = alg.table.get((i, j))
            if coeffs:
                brackets[(a, b)] = {pos[k]: c for k, c in coeffs.items()}
    sub = LieAlgebra.from_brackets(f"{alg.name}_0", [alg.basis[i] for i in idx], brackets)
    return sub, idx


def restrict_to_even(lam: Functional) -> tuple[Functional, list[int]]:
    sub, idx = even_part(lam.ambient)
    return Functional(sub, tuple(lam.coords[i] for i in idx)), idx


@dataclass(frozen=True)
class SuperFunctional:
    functional: Functional
    in_Lambda: bool
    in_Lambda_prime: bool

    def __post_init__(self):
        assert self.in_Lambda or not self.in_Lambda_prime


def classify_lambda(lam: Functional) -> SuperFunctional:
    alg = lam.ambient
    odd = alg.odd_indices()
    in_l = all(lam.coords[i] == 0 for i in odd)
    in_lp = in_l and all(lam(alg.bracket_basis(i, j)) == 0 for i in odd for j in odd)
    return SuperFunctional(lam, in_l, in_lp)


def graded_polarisation(sf: SuperFunctional) -> Subspace:
    """p = p_0 + g_1 with p_0 a polarisation of lambda restricted to g_0."""
    if not sf.in_Lambda_prime:
        raise PreconditionError("graded polarisation needs lambda to vanish on g_1 and on [g_1, g_1]")
    lam = sf.functional
    alg = lam.ambient
    lam0, idx = restrict_to_even(lam)
    p0_sub = vergne_polarisation(lam0)
    lift = [tuple(row[idx.index(i)] if i in idx else la.ZERO for i in range(alg.dim)) for row in p0_sub.rows]
    p = Subspace.span(alg, lift + [alg.e(i) for i in alg.odd_indices()])
    assert p.is_subalgebra, "graded polarisation is not a subalgebra"
    assert all(lam.form(a, b) == 0 for a in p.rows for b in p.rows), "lambda does not vanish on [p, p]"
    assert p.contains(radical(lam)), "graded polarisation misses the radical"
    rad0 = radical(lam0)
    assert 2 * p0_sub.dim == len(idx) + rad0.dim
    return p


def even_part_subspace(p: Subspace) -> Subspace:
    alg = p.ambient
    odd = set(alg.odd_indices())
    return p.intersect(Subspace.of_basis(alg, [i for i in range(alg.dim) if i not in odd]))


@dataclass(frozen=True)
class QuotientShape:
    """U/P is M_s(A_n), or M_s(A_n) x M_s(A_n) when two_block is set."""

    s: int
    n: int
    two_block: bool
    provenance: str

    def __post_init__(self):
        assert self.s >= 1 and self.s & (self.s - 1) == 0, "s must be a power of 2"
        if self.provenance == THEOREM:
            assert self.s == 1 and not self.two_block

    def render(self) -> str:
        block = f"A_{self.n}" if self.s == 1 else f"M_{self.s}(A_{self.n})"
        return f"{block} x {block}" if self.two_block else block


def classify_quotient(sf: SuperFunctional) -> QuotientShape:
    if not sf.in_Lambda:
        raise PreconditionError("lambda must vanish on the odd part")
    lam = sf.functional
    alg = lam.ambient
    lam0, _ = restrict_to_even(lam)
    n = weight(lam0)
    if sf.in_Lambda_prime:
        return QuotientShape(1, n, False, THEOREM)
    odd = alg.odd_indices()
    d = la.rank([[lam(alg.bracket_basis(i, j)) for j in odd] for i in odd])
    return QuotientShape(2 ** (d // 2), n, d % 2 == 1, HEURISTIC)


def build_glmn_plus(m: int, n: int) -> LieAlgebra:
    """Strictly upper triangular block matrices [[A, B], [0, D]] in gl(m, n)."""
    if m < 1 or n < 1:
        raise NilorbitError("gl(m,n)+ needs m, n >= 1")
    if m == n:
        raise NilorbitError("gl(m,n)+ is only built for m != n")
    size = m + n
    units = [(i, i + d) for d in range(1, m) for i in range(1, m - d + 1)]
    units += [(m + i, m + i + d) for d in range(1, n) for i in range(1, n - d + 1)]
    units += [(i, m + j) for i in range(1, m + 1) for j in range(1, n + 1)]
    par = [1 if i <= m < j else 0 for i, j in units]
    index = {u: k for k, u in enumerate(units)}
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for a, (i, j) in enumerate(units):
        for b in range(a, len(units)):
            k, l = units[b]
            sign = -1 if par[a] * par[b] else 1
            coeffs: dict[int, Fraction] = {}
            if j == k:
                coeffs[index[(i, l)]] = coeffs.get(index[(i, l)], 0) + Fraction(1)
            if l == i:
                coeffs[index[(k, j)]] = coeffs.get(index[(k, j)], 0) - sign * Fraction(1)
            coeffs = {key: c for key, c in coeffs.items() if c}
            if coeffs:
                brackets[(a, b)] = coeffs
    names = [_unit_name("E", i, j, size > 9) for i, j in units]
    return LieAlgebra.from_brackets(f"gl({m},{n})+", names, brackets, par)


def build_super_heisenberg() -> LieAlgebra:
    """Basis x, y, z | a, b with [x, y] = z = [a, b]."""
    return LieAlgebra.from_brackets(
        "super_heisenberg", ["x", "y", "z", "a", "b"], {(0, 1): {2: 1}, (3, 4): {2: 1}}, [0, 0, 0, 1, 1]
    )


@dataclass(frozen=True)
class SBound:
    i: int
    value: int


def s_bound(i: int) -> SBound:
    if i < 1:
        raise NilorbitError("s_i is defined for i >= 1")
    num = (i - 2) * i if i % 2 == 0 else (i - 1) ** 2
    assert num % 4 == 0
    return SBound(i, num // 4)


def family_bound(alg: LieAlgebra) -> int | None:
    """Largest weight a shipped family can reach, looked up by algebra name."""
    if m := re.fullmatch(r"n_(\d+)", alg.name):
        return s_bound(int(m.group(1))).value
    if m := re.fullmatch(r"gl\((\d+),(\d+)\)\+", alg.name):
        return s_bound(int(m.group(1))).value + s_bound(int(m.group(2))).value
    if alg.name == "super_heisenberg":
        return s_bound(3).value
    return None


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


def random_functional(alg: LieAlgebra, rng: random.Random, even_only: bool = False) -> Functional:
    coords = tuple(
        la.ZERO if even_only and alg.parity[i] else random_rational(rng) for i in range(alg.dim)
    )
    return Functional(alg, coords)


@dataclass(frozen=True)
class AuditRecord:
    algebra: str
    seed: int
    trials: int
    histogram: dict[int, int]
    bound: int | None

    @property
    def attained(self) -> list[int]:
        return sorted(self.histogram)

    @property
    def max_weight(self) -> int:
        return max(self.histogram)

    @property
    def verdict(self) -> str:
        if self.bound is None:
            return "no bound"
        return "within bound" if self.max_weight <= self.bound else "exceeds bound"

    def as_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "seed": self.seed,
            "trials": self.trials,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "bound": self.bound,
            "attained": self.attained,
            "max_weight": self.max_weight,
            "verdict": self.verdict,
        }


def weight_range_audit(alg: LieAlgebra, trials: int = 200, seed: int = 0) -> AuditRecord:
    """Sample rational functionals (in Lambda for superalgebras) and tally weights."""
    if trials < 1:
        raise NilorbitError("trials must be positive")
    rng = random.Random(seed)
    hist: dict[int, int] = {}
    for _ in range(trials):
        if alg.is_graded:
            lam = random_functional(alg, rng, even_only=True)
            w = classify_quotient(classify_lambda(lam)).n
        else:
            w = weight(random_functional(alg, rng))
        hist[w] = hist.get(w, 0) + 1
    record = AuditRecord(alg.name, seed, trials, dict(sorted(hist.items())), family_bound(alg))
    if record.bound is not None:
        assert record.max_weight <= record.bound, f"sampled weight {record.max_weight} exceeds bound {record.bound}"
    return record


def format_audit(rec: AuditRecord) -> str:
    lines = [
        f"algebra  {rec.algebra}",
        f"seed     {rec.seed}",
        f"trials   {rec.trials}",
        "weight   count",
    ]
    lines += [f"{w:<8} {c}" for w, c in sorted(rec.histogram.items())]
    lines.append(f"bound    {rec.bound if rec.bound is not None else '-'}")
    lines.append(f"attained {' '.join(map(str, rec.attained))}")
    lines.append(f"verdict  {rec.verdict}")
    return "\n".join(lines)
