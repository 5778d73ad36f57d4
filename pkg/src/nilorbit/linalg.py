"""Exact linear algebra over the rationals.

Vectors are tuples of ``Fraction`` and matrices are lists of rows. Everything
here is plain Gaussian elimination; the matrices in this package are small
(dimension well under 50) so there is no point in anything cleverer.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]
Matrix = list[list[Fraction]]

ZERO = Fraction(0)
ONE = Fraction(1)


def vec(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def zeros(n: int) -> Vector:
    return (ZERO,) * n


def unit(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Sequence[Fraction]) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in u)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def is_zero(u: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in u)


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        nz = [(k, row[k]) for k in range(inner) if row[k] != 0]
        out.append([sum((c * b[k][j] for k, c in nz), ZERO) for j in range(cols)])
    return out


def matvec(a: Matrix, v: Sequence[Fraction]) -> Vector:
    return tuple(dot(row, v) for row in a)


def vecmat(v: Sequence[Fraction], a: Matrix) -> Vector:
    """Row vector times matrix."""
    cols = len(a[0]) if a else 0
    return tuple(sum((v[i] * a[i][j] for i in range(len(a)) if v[i] != 0), ZERO) for j in range(cols))


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def rref(rows: Iterable[Sequence[Fraction]], ncols: int | None = None) -> tuple[list[Vector], list[int]]:
    """Reduced row-echelon form.

    Returns the nonzero rows and their pivot columns. The result is canonical:
    two row sets spanning the same space give identical output.
    """
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return [], []
    if ncols is None:
        ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(rows: Iterable[Sequence[Fraction]]) -> int:
    return len(rref(rows)[0])


def nullspace(a: Matrix, ncols: int | None = None) -> list[Vector]:
    """Basis of {x : a x = 0}, one vector per free column."""
    if ncols is None:
        ncols = len(a[0]) if a else 0
    red, pivots = rref(a, ncols) if a else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [ZERO] * ncols
        x[fc] = ONE
        for row, pc in zip(red, pivots):
            x[pc] = -row[fc]
        basis.append(tuple(x))
    return basis


def solve(a: Matrix, b: Sequence[Fraction], ncols: int | None = None) -> Vector | None:
    """One solution of a x = b, or None when the system is inconsistent."""
    if ncols is None:
        ncols = len(a[0]) if a else 0
    aug = [list(row) + [Fraction(bi)] for row, bi in zip(a, b)]
    red, pivots = rref(aug, ncols + 1) if aug else ([], [])
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return tuple(x)


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + list(unit(n, i)) for i, row in enumerate(a)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return [list(row[n:]) for row in red[:n]]


def in_span(basis: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> bool:
    if is_zero(v):
        return True
    return rank(list(basis) + [v]) == rank(basis)
