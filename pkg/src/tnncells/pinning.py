"""
Type A realisation of the pinning and of the cell parameterisations, plus
exact flag linear algebra.

Conventions: B+ is upper triangular, B- lower triangular, the standard flag
is E_k = span(e_1..e_k) and the opposite flag is span(e_n..e_{n-k+1}).  With
these, ``y_1(t) B+`` lies in the cell (e, s_1) for t > 0.

Matrices are tuples of row tuples.  Entries may be ints, Fractions,
IntLaurentPoly or RationalFn; products only need ``+`` and ``*``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from . import linalg
from .subexpr import PositiveSubexpression
from .symbolic import IntLaurentPoly, RationalFn
from .weyl import CartanData, WeylElement, from_permutation, longest_element

__all__ = [
    "NotRealizable", "DegenerateFlag", "Flag",
    "generator", "word_matrix", "cell_representative", "evaluate_matrix",
    "tnn_minor_check", "standard_flag", "opposite_flag",
    "relative_position", "bruhat_pair", "refine_toward", "random_positive_point",
    "weyl_representative",
]

Mat = tuple[tuple, ...]


class NotRealizable(ValueError):
    """No matrix pinning is shipped for this Cartan type."""


class DegenerateFlag(ValueError):
    """Input does not describe a flag."""


def _freeze(m) -> Mat:
    return tuple(tuple(r) for r in m)


def _n_for(cd: CartanData) -> int:
    if cd.type_label != "A":
        raise NotRealizable(f"no matrix pinning for {cd!r}; fold to type A first")
    return cd.rank + 1


def generator(kind: str, i: int, arg=None, n: int = 2) -> Mat:
    """One pinning generator in SL_n.

    ``kind``: ``"x"`` (I + arg E_{i,i+1}), ``"y"`` (I + arg E_{i+1,i}),
    ``"s_dot"`` (x_i(-1) y_i(1) x_i(-1)) or ``"torus"`` (diagonal ``arg``).
    """
    if kind == "torus":
        diag = [Fraction(a) for a in arg]
        if len(diag) != n or any(a <= 0 for a in diag):
            raise ValueError("torus argument must be n positive rationals")
        prod = Fraction(1)
        for a in diag:
            prod *= a
        if prod != 1:
            raise ValueError("torus element must have determinant 1")
        return _freeze([[diag[r] if r == c else 0 for c in range(n)] for r in range(n)])
    if not 1 <= i <= n - 1:
        raise ValueError(f"index {i} out of range for SL_{n}")
    m = linalg.identity(n)
    if kind == "x":
        m[i - 1][i] = arg
    elif kind == "y":
        m[i][i - 1] = arg
    elif kind == "s_dot":
        m[i - 1][i - 1] = 0
        m[i][i] = 0
        m[i - 1][i] = -1
        m[i][i - 1] = 1
    else:
        raise ValueError(f"unknown generator kind {kind!r}")
    return _freeze(m)


def word_matrix(factors: Iterable[tuple], n: int) -> Mat:
    """Product of generators given as ``("s", i)`` or ``("y", i, value)``.

    Each factor is applied as a column operation, which is much cheaper than a
    dense product for symbolic entries.
    """
    m = linalg.identity(n)
    for f in factors:
        i = f[1]
        if not 1 <= i <= n - 1:
            raise ValueError(f"index {i} out of range for SL_{n}")
        a, b = i - 1, i
        if f[0] == "y":
            # right multiplication by I + t E_{i+1,i}: col_a += t * col_b
            t = f[2]
            for r in range(n):
                x = m[r][b]
                if not (isinstance(x, int) and x == 0):
                    m[r][a] = m[r][a] + x * t
        elif f[0] == "s":
            # right multiplication by s_dot: new col_a = col_b, new col_b = -col_a
            for r in range(n):
                m[r][a], m[r][b] = m[r][b], -m[r][a]
        elif f[0] == "x":
            t = f[2]
            for r in range(n):
                x = m[r][a]
                if not (isinstance(x, int) and x == 0):
                    m[r][b] = m[r][b] + x * t
        else:
            raise ValueError(f"unknown factor {f!r}")
    return _freeze(m)


def weyl_representative(w: WeylElement) -> Mat:
    """The signed permutation matrix w_dot = s_dot_{i1} ... s_dot_{im}."""
    return word_matrix((("s", i) for i in w.word), _n_for(w.cartan))


def cell_factors(pse: PositiveSubexpression, values: Sequence) -> list[tuple]:
    """Generator list g_1..g_m with ``values`` assigned to the skipped positions in order."""
    taken = set(pse.v_plus)
    it = iter(values)
    out = []
    for r, i in enumerate(pse.word, start=1):
        out.append(("s", i) if r in taken else ("y", i, next(it)))
    return out


def cell_representative(pse: PositiveSubexpression, symbolic: bool = True,
                        params: Sequence | None = None, n: int | None = None) -> Mat:
    """g_1 ... g_m with s_dot at taken positions and y(t_r) elsewhere.

    Symbolic mode returns entries in IntLaurentPoly with one variable per
    skipped position (in increasing order); otherwise ``params`` supplies values.
    """
    n = _n_for(pse.cartan) if n is None else n
    k = pse.n_params
    if symbolic and params is None:
        values = [IntLaurentPoly.var(j, k) for j in range(k)]
        m = word_matrix(cell_factors(pse, values), n)
        return _freeze([[x if isinstance(x, IntLaurentPoly) else IntLaurentPoly.constant(x, k)
                         for x in row] for row in m])
    if params is None or len(params) != k:
        raise ValueError(f"need {k} parameter values")
    return word_matrix(cell_factors(pse, list(params)), n)


def evaluate_matrix(m: Mat, point: Sequence) -> Mat:
    return _freeze([[x.evaluate(point) if hasattr(x, "evaluate") else Fraction(x) for x in row]
                    for row in m])


def tnn_minor_check(g: Mat) -> bool:
    """True iff every minor of every size is nonnegative."""
    g = linalg.to_fractions(g)
    n = len(g)
    for k in range(1, n + 1):
        for _, _, d in linalg.minors(g, k):
            if d < 0:
                return False
    return True


def random_positive_point(k: int, rng: random.Random, bound: int = 9) -> list[Fraction]:
    return [Fraction(rng.randint(1, bound), rng.randint(1, bound)) for _ in range(k)]


class Flag:
    """Nested subspaces V_d ⊂ Q^n for d in ``dims``, with V_d spanned by the first d
    vectors of ``basis``."""

    __slots__ = ("n", "dims", "basis")

    def __init__(self, n: int, dims: Iterable[int], basis: Sequence[Sequence]):
        dims = tuple(sorted(set(dims)))
        if any(not 1 <= d <= n - 1 for d in dims):
            raise DegenerateFlag(f"dimensions {dims} out of range for n={n}")
        need = dims[-1] if dims else 0
        basis = [[Fraction(x) for x in v] for v in basis]
        if len(basis) < need or any(len(v) != n for v in basis):
            raise DegenerateFlag("basis too short")
        if linalg.span_rank(basis) != len(basis):
            raise DegenerateFlag("basis vectors are dependent")
        self.n = n
        self.dims = dims
        self.basis = tuple(tuple(v) for v in basis)

    @classmethod
    def from_matrix(cls, g: Sequence[Sequence], dims: Iterable[int] | None = None) -> "Flag":
        """Column flag of an invertible matrix (the flag of g·B+)."""
        n = len(g)
        g = linalg.to_fractions(g)
        if linalg.det(g) == 0:
            raise DegenerateFlag("matrix is singular")
        dims = range(1, n) if dims is None else dims
        return cls(n, dims, linalg.columns(g))

    @property
    def is_full(self) -> bool:
        return self.dims == tuple(range(1, self.n))

    def subspace(self, d: int) -> list[tuple]:
        if d == 0:
            return []
        if d == self.n:
            return [tuple(Fraction(int(i == j)) for i in range(self.n)) for j in range(self.n)]
        if d not in self.dims:
            raise KeyError(f"dimension {d} not in flag")
        return list(self.basis[:d])

    def project(self, dims: Iterable[int]) -> "Flag":
        """Forget all subspaces except those of the given dimensions."""
        dims = tuple(sorted(set(dims)))
        if not set(dims) <= set(self.dims):
            raise DegenerateFlag("cannot project to dimensions not present")
        return Flag(self.n, dims, self.basis[:dims[-1]] if dims else ())

    def plucker(self, d: int) -> dict[tuple[int, ...], Fraction]:
        cols = self.subspace(d)
        return {R: linalg.det([[cols[c][r] for c in range(d)] for r in R])
                for R in combinations(range(self.n), d)}

    def same_as(self, other: "Flag") -> bool:
        if self.n != other.n or self.dims != other.dims:
            return False
        for d in self.dims:
            a, b = self.subspace(d), other.subspace(d)
            if linalg.span_rank(list(a) + list(b)) != d:
                return False
        return True

    def __repr__(self):
        return f"Flag(n={self.n}, dims={self.dims})"

    def to_json(self) -> dict:
        return {"n": self.n, "dims": list(self.dims),
                "basis": [[str(x) for x in v] for v in self.basis]}

    @classmethod
    def from_json(cls, data: dict) -> "Flag":
        return cls(int(data["n"]), data["dims"],
                   [[Fraction(x) for x in v] for v in data["basis"]])


def standard_flag(n: int) -> Flag:
    return Flag(n, range(1, n), [[Fraction(int(i == j)) for i in range(n)] for j in range(n)])


def opposite_flag(n: int) -> Flag:
    return Flag(n, range(1, n),
                [[Fraction(int(i == n - 1 - j)) for i in range(n)] for j in range(n)])


def _complete(f: Flag) -> list[tuple]:
    """Full basis of Q^n extending the flag basis."""
    basis = [list(v) for v in f.basis]
    for j in range(f.n):
        if len(basis) == f.n:
            break
        e = [Fraction(int(i == j)) for i in range(f.n)]
        if linalg.span_rank(basis + [e]) > len(basis):
            basis.append(e)
    return [tuple(v) for v in basis]


@lru_cache(maxsize=64)
def _type_a(n: int) -> CartanData:
    return CartanData("A", n - 1)


def relative_position(f1: Flag, f2: Flag) -> WeylElement:
    """The w with (f1, f2) = (g E, g w_dot E), read off the table dim(V1_i ∩ V2_j)."""
    if f1.n != f2.n or not f1.is_full or not f2.is_full:
        raise DegenerateFlag("relative position needs two full flags in the same space")
    n = f1.n
    b1, b2 = _complete(f1), _complete(f2)
    d = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        for j in range(n + 1):
            if i == 0 or j == 0:
                continue
            if i == n or j == n:
                d[i][j] = min(i, j)
                continue
            d[i][j] = i + j - linalg.span_rank(list(b1[:i]) + list(b2[:j]))
    perm = []
    for j in range(1, n + 1):
        hits = [i for i in range(1, n + 1)
                if d[i][j] - d[i - 1][j] - d[i][j - 1] + d[i - 1][j - 1] == 1]
        if len(hits) != 1:
            raise DegenerateFlag("rank table is not a permutation table")
        perm.append(hits[0])
    if sorted(perm) != list(range(1, n + 1)):
        raise DegenerateFlag("rank table is not a permutation table")
    return from_permutation(_type_a(n), perm)


def bruhat_pair(f: Flag) -> tuple[WeylElement, WeylElement]:
    """(v, w) with the flag in B+ w B+ ∩ B- v B+ (i.e. in R_{v,w})."""
    n = f.n
    w = relative_position(standard_flag(n), f)
    u = relative_position(opposite_flag(n), f)
    v = longest_element(_type_a(n)) * u
    return v, w


def refine_toward(p: Flag, reference: Flag) -> Flag:
    """Full flag refining ``p``, filling each gap U ⊂ U' with U + (U' ∩ F_k), k = 1..n."""
    if not reference.is_full or reference.n != p.n:
        raise DegenerateFlag("reference must be a full flag in the same space")
    n = p.n
    ref = _complete(reference)
    levels = [0] + list(p.dims) + [n]
    basis: list[list[Fraction]] = []
    for lo, hi in zip(levels, levels[1:]):
        upper = [list(v) for v in p.subspace(hi)]
        assert len(basis) == lo
        # the lower space is already spanned by basis
        for k in range(1, n + 1):
            if len(basis) == hi:
                break
            cap = linalg.intersect(upper, [list(v) for v in ref[:k]])
            for vec in cap:
                if linalg.span_rank(basis + [vec]) > len(basis):
                    basis.append(vec)
                    break
        if len(basis) != hi:
            raise DegenerateFlag("refinement failed to reach the next subspace")
    return Flag(n, range(1, n), basis)
