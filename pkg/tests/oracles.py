"""Independent reference computations used only by the tests.

None of these reuse the library's bracket tables or straightening code:
matrices are built from basis names, and PBW normal forms come from a plain
iterative word-rewriting loop.
"""

from __future__ import annotations

import re
from fractions import Fraction

from nilorbit import linalg as la


def unit_of(name: str) -> tuple[int, int]:
    m = re.fullmatch(r"E(\d+),(\d+)", name) or re.fullmatch(r"E(\d)(\d)", name)
    assert m, name
    return int(m.group(1)), int(m.group(2))


def as_matrix(alg, v, size):
    mat = [[Fraction(0)] * size for _ in range(size)]
    for k, c in enumerate(v):
        if c:
            i, j = unit_of(alg.basis[k])
            mat[i - 1][j - 1] += c
    return mat


def from_matrix(alg, mat):
    out = [Fraction(0)] * alg.dim
    for k, name in enumerate(alg.basis):
        i, j = unit_of(name)
        out[k] = mat[i - 1][j - 1]
        mat[i - 1][j - 1] = Fraction(0)
    assert all(c == 0 for row in mat for c in row), "result leaves the span of the basis"
    return tuple(out)


def _mm(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]


def _lin(*terms):
    n = len(terms[0][1])
    return [[sum((c * m[i][j] for c, m in terms), Fraction(0)) for j in range(n)] for i in range(n)]


def matrix_commutator(alg, u, v, size):
    a, b = as_matrix(alg, u, size), as_matrix(alg, v, size)
    return from_matrix(alg, _lin((1, _mm(a, b)), (-1, _mm(b, a))))


def block_bracket(alg, u, v, m, n):
    """[(A,B,D),(A',B',D')] = (AA'-A'A, AB'-A'B+BD'-B'D, DD'-D'D)."""
    size = m + n

    def blocks(x):
        mat = as_matrix(alg, x, size)
        a = [row[:m] for row in mat[:m]]
        b = [row[m:] for row in mat[:m]]
        d = [row[m:] for row in mat[m:]]
        return a, b, d

    def mul(x, y):
        rows, inner, cols = len(x), len(y), len(y[0]) if y else 0
        return [[sum((x[i][k] * y[k][j] for k in range(inner)), Fraction(0)) for j in range(cols)] for i in range(rows)]

    def comb(*terms):
        r, c = len(terms[0][1]), len(terms[0][1][0]) if terms[0][1] else 0
        return [[sum((s * t[i][j] for s, t in terms), Fraction(0)) for j in range(c)] for i in range(r)]

    a1, b1, d1 = blocks(u)
    a2, b2, d2 = blocks(v)
    a = comb((1, mul(a1, a2)), (-1, mul(a2, a1)))
    d = comb((1, mul(d1, d2)), (-1, mul(d2, d1)))
    b = comb((1, mul(a1, b2)), (-1, mul(a2, b1)), (1, mul(b1, d2)), (-1, mul(b2, d1)))
    full = [[Fraction(0)] * size for _ in range(size)]
    for i in range(m):
        for j in range(m):
            full[i][j] = a[i][j]
        for j in range(n):
            full[i][m + j] = b[i][j]
    for i in range(n):
        for j in range(n):
            full[m + i][m + j] = d[i][j]
    return from_matrix(alg, full)


def brute_jacobi(alg, a, b, c):
    """[a,[b,c]] + [b,[c,a]] + [c,[a,b]] for even elements, from the bilinear bracket."""
    br = alg.bracket
    return la.add(la.add(br(a, br(b, c)), br(b, br(c, a))), br(c, br(a, b)))


class WordModule:
    """U(g) (x)_{U(p)} C_f by rewriting words in an adapted basis.

    Letters 0..r-1 are the complement basis vectors, letters r.. are the rows
    of p. A normal word is a non-decreasing string of complement letters;
    ``t^a`` corresponds to the word with a_i copies of letter i.
    """

    def __init__(self, alg, p, f, comp):
        self.alg, self.f, self.r = alg, f, len(comp)
        self.basis = [alg.e(i) for i in comp] + [tuple(r) for r in p.rows]
        self.inv = la.inverse([list(b) for b in self.basis])

    def coords(self, v):
        return la.vecmat(v, self.inv)

    def bracket_letters(self, i, j):
        return self.coords(self.alg.bracket(self.basis[i], self.basis[j]))

    def normalise(self, words):
        """words: dict word-tuple -> coefficient; returns normal form as a poly."""
        todo = dict(words)
        done: dict = {}
        while todo:
            word, c = todo.popitem()
            if not c:
                continue
            new = self._step(word)
            if new is None:
                exp = tuple(word.count(i) for i in range(self.r))
                done[exp] = done.get(exp, 0) + c
                continue
            for w, k in new:
                todo[w] = todo.get(w, 0) + c * k
        return {e: Fraction(v) for e, v in done.items() if v}

    def _step(self, word):
        r = self.r
        ps = [i for i, x in enumerate(word) if x >= r]
        if ps:
            pos = ps[-1]
            x = word[pos]
            if pos == len(word) - 1:
                return [(word[:-1], self.f(self.basis[x]))]
            y = word[pos + 1]
            out = [(word[:pos] + (y, x) + word[pos + 2:], Fraction(1))]
            for k, c in enumerate(self.bracket_letters(x, y)):
                if c:
                    out.append((word[:pos] + (k,) + word[pos + 2:], c))
            return out
        for pos in range(len(word) - 1):
            x, y = word[pos], word[pos + 1]
            if x > y:
                out = [(word[:pos] + (y, x) + word[pos + 2:], Fraction(1))]
                for k, c in enumerate(self.bracket_letters(x, y)):
                    if c:
                        out.append((word[:pos] + (k,) + word[pos + 2:], c))
                return out
        return None

    def act(self, elements, a):
        """Apply the product elements[0] * elements[1] * ... to t^a."""
        base = tuple(i for i, n in enumerate(a) for _ in range(n))
        words = {base: Fraction(1)}
        for v in reversed(elements):
            coeffs = self.coords(v)
            nxt: dict = {}
            for w, c in words.items():
                for k, ck in enumerate(coeffs):
                    if ck:
                        key = (k,) + w
                        nxt[key] = nxt.get(key, 0) + c * ck
            words = self.normalise(nxt)
            words = {tuple(i for i, n in enumerate(e) for _ in range(n)): c for e, c in words.items()}
        return {tuple(w.count(i) for i in range(self.r)): c for w, c in words.items()}
