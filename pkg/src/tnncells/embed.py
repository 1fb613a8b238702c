"""
Flag minors and their Segre product: the projective coordinates of a flag.

For a matrix ``g`` the level-k coordinates are the left-justified minors
``Δ_{R,[k]}(g)`` for all k-subsets R of rows.  The Segre vector collects all
products ``Δ_{R_1,[1]} ... Δ_{R_{n-1},[n-1]}``.  Row subsets are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Mapping, Sequence

from . import linalg
from .pinning import Flag, cell_representative
from .subexpr import PositiveSubexpression
from .symbolic import IntLaurentPoly, has_nonnegative_coeffs

__all__ = [
    "NotInClosure", "CertificateReport",
    "all_flag_minors", "flag_minors", "segre_keys", "segre_coordinates",
    "normalized_levels", "cell_coordinates", "certify_positive",
    "plucker_to_subspace", "recover_flag",
]

RowSet = tuple[int, ...]
SegreKey = tuple[RowSet, ...]


class NotInClosure(ValueError):
    """A Segre vector that no flag produces (not decomposable, or levels not nested)."""


def _is_zero(x) -> bool:
    if isinstance(x, IntLaurentPoly):
        return x.is_zero()
    return x == 0


def all_flag_minors(g: Sequence[Sequence]) -> list[dict[RowSet, object]]:
    """``levels[k][R] = Δ_{R,[k]}(g)`` for k = 0..n, by expansion along the last column."""
    n = len(g)
    levels: list[dict[RowSet, object]] = [{(): 1}]
    for k in range(1, n + 1):
        prev = levels[-1]
        cur = {}
        for R in combinations(range(1, n + 1), k):
            acc = 0
            for a, r in enumerate(R):
                x = g[r - 1][k - 1]
                if _is_zero(x):
                    continue
                sub = prev[R[:a] + R[a + 1:]]
                if _is_zero(sub):
                    continue
                term = x * sub
                acc = acc + term if (a + k - 1) % 2 == 0 else acc - term
            cur[R] = acc
        levels.append(cur)
    return levels


def flag_minors(g: Sequence[Sequence], k: int) -> dict[RowSet, object]:
    """All C(n, k) minors with rows R and columns 1..k, in lexicographic order of R."""
    n = len(g)
    if not 1 <= k <= n:
        raise ValueError(f"level {k} out of range")
    return all_flag_minors(g)[k]


def segre_keys(n: int) -> list[SegreKey]:
    return list(product(*(list(combinations(range(1, n + 1), k)) for k in range(1, n))))


def _poly_sign(x) -> int:
    if isinstance(x, IntLaurentPoly):
        return x.sign()
    return (x > 0) - (x < 0)


def normalized_levels(g: Sequence[Sequence]) -> tuple[list[dict[RowSet, object]], list[int]]:
    """Levels 1..n-1 of flag minors, each multiplied by the sign of its first nonzero entry."""
    n = len(g)
    levels = all_flag_minors(g)[1:n]
    signs = []
    for lvl in levels:
        first = next((x for x in lvl.values() if not _is_zero(x)), None)
        if first is None:
            raise ValueError("all minors of a level vanish; matrix is singular")
        s = _poly_sign(first)
        signs.append(s)
        if s < 0:
            for R in lvl:
                lvl[R] = -lvl[R]
    return levels, signs


def segre_coordinates(g: Sequence[Sequence], normalize: bool = True) -> dict[SegreKey, object]:
    """All products of one flag minor per level, keyed by the tuple of row sets."""
    n = len(g)
    if normalize:
        levels, _ = normalized_levels(g)
    else:
        levels = all_flag_minors(g)[1:n]
    out = {}
    for key in segre_keys(n):
        val = None
        for lvl, R in zip(levels, key):
            x = lvl[R]
            if _is_zero(x):
                val = 0
                break
            val = x if val is None else val * x
        out[key] = val
    return out


def cell_coordinates(pse: PositiveSubexpression, matrix=None) -> tuple[list[SegreKey], list[IntLaurentPoly]]:
    """Sign-normalised Segre coordinates of the symbolic cell representative."""
    g = matrix if matrix is not None else cell_representative(pse, symbolic=True)
    k = pse.n_params
    coords = segre_coordinates(g)
    keys = list(coords)
    polys = [c if isinstance(c, IntLaurentPoly) else IntLaurentPoly.constant(int(c), k)
             for c in coords.values()]
    return keys, polys


@dataclass
class CertificateReport:
    v: tuple[int, ...]
    w: tuple[int, ...]
    passed: bool
    n_coords: int
    zero_coords: list[int] = field(default_factory=list)
    negative_coords: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"cell": {"v": list(self.v), "w": list(self.w)}, "pass": self.passed,
                "n_coords": self.n_coords, "zero_coords": self.zero_coords}


def certify_positive(pse: PositiveSubexpression, matrix=None, w_word=None) -> CertificateReport:
    """Check that every Segre coordinate of the cell has nonnegative coefficients.

    ``matrix`` overrides the type A representative (used for folded cells);
    ``w_word`` overrides the reported word for w.
    """
    _, polys = cell_coordinates(pse, matrix)
    zeros, negs = [], []
    for j, p in enumerate(polys):
        if p.is_zero():
            zeros.append(j)
        elif not has_nonnegative_coeffs(p):
            negs.append(j)
    return CertificateReport(pse.v.word, tuple(w_word or pse.word), not negs, len(polys), zeros, negs)


# recovering a flag from a numeric Segre vector

def _perm_sign(seq: Sequence[int]) -> int:
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return -1 if inv % 2 else 1


def plucker_to_subspace(p: Mapping[RowSet, Fraction], n: int, k: int) -> list[list[Fraction]]:
    """Basis (k column vectors) of the subspace with Plücker vector ``p`` (up to scale)."""
    anchor = max((R for R in p if p[R] != 0), key=lambda R: abs(p[R]), default=None)
    if anchor is None:
        raise NotInClosure("Plücker vector is zero")
    base = Fraction(p[anchor])
    cols = []
    for a, ia in enumerate(anchor):
        col = []
        for j in range(1, n + 1):
            if j == ia:
                col.append(Fraction(1))
            elif j in anchor:
                col.append(Fraction(0))
            else:
                seq = anchor[:a] + (j,) + anchor[a + 1:]
                col.append(_perm_sign(seq) * Fraction(p.get(tuple(sorted(seq)), 0)) / base)
        cols.append(col)
    mat = linalg.from_columns(cols, n)
    for R in combinations(range(1, n + 1), k):
        d = linalg.det([mat[r - 1] for r in R])
        if d * base != p.get(R, 0):
            raise NotInClosure(f"level-{k} vector is not decomposable")
    return cols


def recover_flag(sv: Mapping[SegreKey, Fraction], n: int | None = None) -> Flag:
    """Full flag whose Segre vector is proportional to ``sv``."""
    keys = list(sv)
    if n is None:
        n = len(keys[0]) + 1
    anchor = next((key for key in segre_keys(n) if sv.get(key, 0) != 0), None)
    if anchor is None:
        raise NotInClosure("Segre vector is zero")
    levels = []
    for k in range(1, n):
        vec = {}
        for R in combinations(range(1, n + 1), k):
            key = anchor[:k - 1] + (R,) + anchor[k:]
            vec[R] = Fraction(sv.get(key, 0))
        levels.append(vec)
    a = Fraction(sv[anchor])
    for key in segre_keys(n):
        prod = Fraction(1)
        for lvl, R in zip(levels, key):
            prod *= lvl[R]
        if prod != Fraction(sv.get(key, 0)) * a ** (n - 2):
            raise NotInClosure("Segre vector is not a product of level vectors")
    spaces = [plucker_to_subspace(levels[k - 1], n, k) for k in range(1, n)]
    basis: list[list[Fraction]] = []
    for k, space in enumerate(spaces, start=1):
        if linalg.span_rank(basis + space) != k:
            raise NotInClosure("recovered subspaces are not nested")
        for vec in space:
            if linalg.span_rank(basis + [vec]) > len(basis):
                basis.append(vec)
                break
    return Flag(n, range(1, n), basis)
