"""Exact dense linear algebra over ``Fraction`` and over generic commutative rings."""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Sequence

Matrix = list[list]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    """Product over any ring whose elements support + and * with ints."""
    n, m, p = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(p):
            acc = 0
            for k in range(m):
                x = ai[k]
                if isinstance(x, int) and x == 0:
                    continue
                y = b[k][j]
                if isinstance(y, int) and y == 0:
                    continue
                acc = acc + x * y
            row.append(acc)
        out.append(row)
    return out


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


def to_fractions(a: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in a]


def rref(a: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns.

    Elimination runs on integer rows (each input row scaled by its common
    denominator); only the final division by the pivots produces Fractions.
    """
    m = [_integer_row(r) for r in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pr = m[r]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f, g = pr[c], m[i][c]
                row = [f * x - g * y for x, y in zip(m[i], pr)]
                d = math.gcd(*row)
                m[i] = [x // d for x in row] if d > 1 else row
        pivots.append(c)
        r += 1
        if r == rows:
            break
    out = []
    for i, row in enumerate(m):
        if i < len(pivots):
            piv = row[pivots[i]]
            out.append([Fraction(x, piv) for x in row])
        else:
            out.append([Fraction(0)] * cols)
    return out, pivots


def _integer_row(row: Sequence) -> list[int]:
    den = 1
    for x in row:
        d = x.denominator
        if d != 1:
            den = den * d // math.gcd(den, d)
    if den == 1:
        return [int(x) for x in row]
    return [x.numerator * (den // x.denominator) for x in row]


def int_echelon(a: Sequence[Sequence[int]]) -> list[list[int]]:
    """Fraction-free row echelon form of an integer matrix (nonzero rows only)."""
    rows = [list(r) for r in a if any(r)]
    out = []
    while rows:
        c = min(next(j for j, x in enumerate(r) if x) for r in rows)
        piv = next(r for r in rows if r[c])
        out.append(piv)
        nxt = []
        for r in rows:
            if r is piv:
                continue
            if r[c]:
                r = [piv[c] * x - r[c] * y for x, y in zip(r, piv)]
                g = math.gcd(*r)
                if g > 1:
                    r = [x // g for x in r]
            if any(r):
                nxt.append(r)
        rows = nxt
    return out


def rank(a: Sequence[Sequence]) -> int:
    if not a or not a[0]:
        return 0
    return len(int_echelon([_integer_row(r) for r in a]))


def nullspace(a: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : a x = 0}."""
    if not a:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    m, pivots = rref(a)
    n = len(m[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -m[r][f]
        basis.append(v)
    return basis


def det(a: Sequence[Sequence]) -> Fraction:
    m = to_fractions(a)
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in m]


def columns(a: Sequence[Sequence], k: int | None = None) -> list[list]:
    """First ``k`` columns of ``a`` as vectors."""
    k = len(a[0]) if k is None else k
    return [[row[j] for row in a] for j in range(k)]


def from_columns(cols: Sequence[Sequence], n: int) -> Matrix:
    if not cols:
        return [[] for _ in range(n)]
    return [[c[i] for c in cols] for i in range(n)]


def span_rank(vectors: Sequence[Sequence]) -> int:
    return rank([list(v) for v in vectors]) if vectors else 0


def intersect(u: Sequence[Sequence], v: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of span(u) ∩ span(v); arguments are lists of column vectors."""
    if not u or not v:
        return []
    n = len(u[0])
    # solve sum a_i u_i = sum b_j v_j
    mat = [[u[i][r] for i in range(len(u))] + [-v[j][r] for j in range(len(v))]
           for r in range(n)]
    out = []
    for sol in nullspace(mat, len(u) + len(v)):
        vec = [sum(sol[i] * u[i][r] for i in range(len(u))) for r in range(n)]
        out.append(vec)
    # drop dependent vectors
    basis: list[list[Fraction]] = []
    for vec in out:
        if span_rank(basis + [vec]) > len(basis):
            basis.append(vec)
    return basis


def minors(a: Sequence[Sequence], k: int):
    """Yield (rows, cols, det) for every k×k minor of a Fraction matrix."""
    n, m = len(a), len(a[0])
    for rows in combinations(range(n), k):
        for cols in combinations(range(m), k):
            yield rows, cols, det([[a[i][j] for j in cols] for i in rows])
