"""
Cartan data and finite Weyl group combinatorics.

Elements are stored by their lexicographically least reduced word.  Group
computations go through the action on the weight lattice: an element ``w``
is determined by ``w(rho)`` written in fundamental-weight coordinates, and
the negative coordinates of that vector are exactly the left descents.

>>> A2 = CartanData("A", 2)
>>> s1, s2 = A2.s(1), A2.s(2)
>>> (s1 * s2 * s1).word
(1, 2, 1)
>>> (s2 * s1 * s2) == s1 * s2 * s1
True
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

__all__ = [
    "CartanData", "WeylElement", "CartanMismatch", "GroupTooLarge",
    "multiply", "bruhat_leq", "parabolic_decompose", "enumerate_elements",
    "longest_element", "to_permutation", "from_permutation",
    "bruhat_leq_permutation", "reduced_words", "parse_cartan",
]

DEFAULT_SIZE_GUARD = math.factorial(8)


class CartanMismatch(ValueError):
    """Operands live over different Cartan data."""


class GroupTooLarge(ValueError):
    """Exhaustive enumeration refused by the size guard."""


def _chain(rank: int) -> list[list[int]]:
    a = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        a[i][i] = 2
        if i + 1 < rank:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def _standard_matrix(label: str, rank: int) -> list[list[int]]:
    # entry [i][j] = <alpha_j, alpha_i^vee>, Bourbaki node labels
    if label == "A":
        return _chain(rank)
    if label == "B":
        a = _chain(rank)
        a[rank - 1][rank - 2] = -2
        return a
    if label == "C":
        a = _chain(rank)
        a[rank - 2][rank - 1] = -2
        return a
    if label == "D":
        a = _chain(rank - 1)
        a = [row + [0] for row in a] + [[0] * rank]
        a[rank - 2][rank - 1] = 0
        a[rank - 1][rank - 2] = 0
        a[rank - 1][rank - 1] = 2
        a[rank - 1][rank - 3] = a[rank - 3][rank - 1] = -1
        return a
    if label == "E":
        a = [[0] * rank for _ in range(rank)]
        edges = [(1, 3), (3, 4), (2, 4)] + [(k, k + 1) for k in range(4, rank)]
        for i in range(rank):
            a[i][i] = 2
        for i, j in edges:
            a[i - 1][j - 1] = a[j - 1][i - 1] = -1
        return a
    if label == "F":
        a = _chain(4)
        a[2][1] = -2
        return a
    if label == "G":
        return [[2, -3], [-1, 2]]
    raise ValueError(f"unknown Cartan type {label!r}")


_RANK_OK = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


def _group_order(label: str, n: int) -> int:
    if label == "A":
        return math.factorial(n + 1)
    if label in "BC":
        return 2 ** n * math.factorial(n)
    if label == "D":
        return 2 ** (n - 1) * math.factorial(n)
    return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
            ("F", 4): 1152, ("G", 2): 12}[label, n]


@dataclass(frozen=True)
class CartanData:
    """A finite Cartan type such as ``CartanData("A", 3)``; nodes are 1..rank."""

    type_label: str
    rank: int

    def __post_init__(self):
        if self.type_label not in _RANK_OK:
            raise ValueError(f"unknown Cartan type {self.type_label!r}")
        if not isinstance(self.rank, int) or not _RANK_OK[self.type_label](self.rank):
            raise ValueError(f"invalid rank {self.rank} for type {self.type_label}")

    def __repr__(self):
        return f"{self.type_label}{self.rank}"

    @cached_property
    def cartan_matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(r) for r in _standard_matrix(self.type_label, self.rank))

    @property
    def nodes(self) -> tuple[int, ...]:
        return tuple(range(1, self.rank + 1))

    @property
    def simply_laced(self) -> bool:
        return self.type_label in "ADE"

    @property
    def order(self) -> int:
        return _group_order(self.type_label, self.rank)

    def braid_order(self, i: int, j: int) -> int:
        """Order m_ij of s_i s_j."""
        if i == j:
            return 1
        prod = self.cartan_matrix[i - 1][j - 1] * self.cartan_matrix[j - 1][i - 1]
        return {0: 2, 1: 3, 2: 4, 3: 6}[prod]

    def to_json(self) -> dict:
        return {"type": self.type_label, "rank": self.rank}

    @classmethod
    def from_json(cls, data: dict) -> "CartanData":
        return cls(str(data["type"]).upper(), int(data["rank"]))

    # element constructors

    def element(self, word: Iterable[int] = ()) -> "WeylElement":
        return WeylElement.from_word(self, word)

    def identity(self) -> "WeylElement":
        return self.element(())

    def s(self, i: int) -> "WeylElement":
        return self.element((i,))

    def longest(self) -> "WeylElement":
        return longest_element(self)

    def _check_node(self, i: int):
        if not 1 <= i <= self.rank:
            raise ValueError(f"node {i} out of range for {self!r}")

    def reflect(self, mu: tuple[int, ...], i: int) -> tuple[int, ...]:
        """Apply s_i to a weight given in fundamental-weight coordinates."""
        c = mu[i - 1]
        if c == 0:
            return mu
        col = [row[i - 1] for row in self.cartan_matrix]
        return tuple(m - c * a for m, a in zip(mu, col))

    @property
    def rho(self) -> tuple[int, ...]:
        return (1,) * self.rank


_CARTAN_RE = re.compile(r"^\s*([A-Ga-g])\s*_?\s*(\d+)\s*$")


def parse_cartan(text: str, rank: int | None = None) -> CartanData:
    """Parse ``"A3"``, ``"C_2"`` or a bare letter plus explicit rank."""
    m = _CARTAN_RE.match(text)
    if m:
        return CartanData(m.group(1).upper(), int(m.group(2)))
    if rank is not None and text.strip().upper() in _RANK_OK:
        return CartanData(text.strip().upper(), int(rank))
    raise ValueError(f"cannot parse Cartan type from {text!r}")


def _act_word(cd: CartanData, word: Sequence[int], mu: tuple[int, ...]) -> tuple[int, ...]:
    for i in reversed(word):
        mu = cd.reflect(mu, i)
    return mu


def _normal_form_from_rho(cd: CartanData, mu: tuple[int, ...]) -> tuple[int, ...]:
    # peel the smallest left descent until mu is dominant
    word = []
    while True:
        for i, c in enumerate(mu, start=1):
            if c < 0:
                word.append(i)
                mu = cd.reflect(mu, i)
                break
        else:
            return tuple(word)


class WeylElement:
    """An element of the Weyl group of ``cartan``; immutable and hashable."""

    __slots__ = ("cartan", "word", "_rho")

    def __init__(self, cartan: CartanData, word: tuple[int, ...], rho: tuple[int, ...]):
        self.cartan = cartan
        self.word = word
        self._rho = rho

    @classmethod
    def from_word(cls, cartan: CartanData, word: Iterable[int]) -> "WeylElement":
        word = tuple(int(i) for i in word)
        for i in word:
            cartan._check_node(i)
        mu = _act_word(cartan, word, cartan.rho)
        return cls(cartan, _normal_form_from_rho(cartan, mu), mu)

    # basic queries

    def length(self) -> int:
        return len(self.word)

    def __len__(self):
        return len(self.word)

    def is_identity(self) -> bool:
        return not self.word

    def left_descents(self) -> frozenset[int]:
        return frozenset(i for i, c in enumerate(self._rho, start=1) if c < 0)

    def right_descents(self) -> frozenset[int]:
        return self.inverse().left_descents()

    def has_left_descent(self, i: int) -> bool:
        return self._rho[i - 1] < 0

    def has_right_descent(self, i: int) -> bool:
        return self.inverse()._rho[i - 1] < 0

    def inverse(self) -> "WeylElement":
        return WeylElement.from_word(self.cartan, reversed(self.word))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return multiply(self, other)

    def left_mul(self, i: int) -> "WeylElement":
        """Return s_i * self."""
        mu = self.cartan.reflect(self._rho, i)
        return WeylElement(self.cartan, _normal_form_from_rho(self.cartan, mu), mu)

    def right_mul(self, i: int) -> "WeylElement":
        """Return self * s_i."""
        return WeylElement.from_word(self.cartan, self.word + (i,))

    def bruhat_le(self, other: "WeylElement") -> bool:
        return bruhat_leq(self, other)

    def __eq__(self, other):
        return (isinstance(other, WeylElement) and self.cartan == other.cartan
                and self.word == other.word)

    def __hash__(self):
        return hash((self.cartan, self.word))

    def __repr__(self):
        if not self.word:
            return "e"
        sep = "" if self.cartan.rank < 10 else "*"
        return sep.join(f"s{i}" for i in self.word)

    def to_json(self) -> list[int]:
        return list(self.word)

    def __reduce__(self):
        return (WeylElement.from_word, (self.cartan, self.word))


def _same_cartan(*elts: WeylElement):
    cd = elts[0].cartan
    for x in elts[1:]:
        if x.cartan != cd:
            raise CartanMismatch(f"{cd!r} vs {x.cartan!r}")


def multiply(a: WeylElement, b: WeylElement) -> WeylElement:
    _same_cartan(a, b)
    return WeylElement.from_word(a.cartan, a.word + b.word)


@lru_cache(maxsize=None)
def _bruhat(cd: CartanData, v: tuple[int, ...], w: tuple[int, ...]) -> bool:
    # subword property, peeling the first letter s of the reduced word of w:
    # v <= w  iff  (sv < v ? sv <= sw : v <= sw)
    if len(v) > len(w):
        return False
    if not w:
        return not v
    if len(v) == len(w):
        return v == w
    s = w[0]
    sw = w[1:]  # tail of a normal form is again reduced; renormalize below
    ve = WeylElement.from_word(cd, v)
    swe = WeylElement.from_word(cd, sw)
    if ve.has_left_descent(s):
        return _bruhat(cd, ve.left_mul(s).word, swe.word)
    return _bruhat(cd, ve.word, swe.word)


def bruhat_leq(v: WeylElement, w: WeylElement) -> bool:
    """True iff v <= w in the Bruhat order."""
    _same_cartan(v, w)
    return _bruhat(v.cartan, v.word, w.word)


def longest_element(cd: CartanData, J: Iterable[int] | None = None) -> WeylElement:
    """Longest element of W, or of the parabolic subgroup W_J."""
    nodes = cd.nodes if J is None else tuple(sorted(set(J)))
    w = cd.identity()
    while True:
        for j in nodes:
            if not w.has_right_descent(j):
                w = w.right_mul(j)
                break
        else:
            return w


def _check_J(cd: CartanData, J: Iterable[int]) -> frozenset[int]:
    J = frozenset(int(j) for j in J)
    for j in J:
        cd._check_node(j)
    return J


def parabolic_decompose(w: WeylElement, J: Iterable[int]) -> tuple[WeylElement, WeylElement]:
    """Split ``w = w^J * u`` with ``w^J`` a minimal coset representative and ``u`` in W_J."""
    J = _check_J(w.cartan, J)
    left, right = w, []
    while True:
        for j in sorted(J):
            if left.has_right_descent(j):
                left = left.right_mul(j)
                right.append(j)
                break
        else:
            break
    return left, WeylElement.from_word(w.cartan, reversed(right))


def enumerate_elements(cd: CartanData, kind: str = "W", J: Iterable[int] = (),
                       guard: int = DEFAULT_SIZE_GUARD) -> list[WeylElement]:
    """All elements of ``W``, ``W_J``, ``W^J`` or ``W^J_max``, sorted by (length, word).

    ``kind`` is one of ``"W"``, ``"W_J"``, ``"W^J"``, ``"W^J_max"``.
    """
    if cd.order > guard:
        raise GroupTooLarge(f"|W({cd!r})| = {cd.order} exceeds guard {guard}")
    J = _check_J(cd, J)
    if kind == "W":
        gens = cd.nodes
    elif kind == "W_J":
        gens = tuple(sorted(J))
    elif kind in ("W^J", "W^J_max"):
        gens = cd.nodes
    else:
        raise ValueError(f"unknown kind {kind!r}")
    e = cd.identity()
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for i in gens:
            y = x.right_mul(i)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    elts = sorted(seen, key=lambda x: (len(x), x.word))
    if kind == "W^J":
        elts = [x for x in elts if not any(x.has_right_descent(j) for j in J)]
    elif kind == "W^J_max":
        wJ = longest_element(cd, J)
        elts = sorted((x * wJ for x in elts if not any(x.has_right_descent(j) for j in J)),
                      key=lambda x: (len(x), x.word))
    return elts


def reduced_words(w: WeylElement) -> list[tuple[int, ...]]:
    """Every reduced word of ``w``, lexicographically sorted."""
    out = []

    def rec(x: WeylElement, suffix: tuple[int, ...]):
        if x.is_identity():
            out.append(suffix)
            return
        for i in sorted(x.right_descents()):
            rec(x.right_mul(i), (i,) + suffix)

    rec(w, ())
    return sorted(set(out))


# permutation model for type A (independent oracle)

def to_permutation(w: WeylElement) -> tuple[int, ...]:
    """One-line notation of w in S_{n+1}; s_i acts as the transposition (i, i+1).

    The word (i1, ..., im) maps to the composition t_{i1} o ... o t_{im}.
    """
    if w.cartan.type_label != "A":
        raise ValueError("permutation model exists for type A only")
    n = w.cartan.rank + 1
    perm = list(range(1, n + 1))
    for i in reversed(w.word):
        perm = [i + 1 if p == i else i if p == i + 1 else p for p in perm]
    return tuple(perm)


def from_permutation(cd: CartanData, perm: Sequence[int]) -> WeylElement:
    if cd.type_label != "A" or len(perm) != cd.rank + 1:
        raise ValueError("permutation does not match type A data")
    perm = list(perm)
    word = []
    # sort by adjacent swaps on the left: perm = t_i o perm'
    while True:
        for i in range(1, len(perm)):
            # left descent i of perm: i+1 appears before i in one-line notation
            if perm.index(i + 1) < perm.index(i):
                word.append(i)
                perm = [i + 1 if p == i else i if p == i + 1 else p for p in perm]
                break
        else:
            break
    return cd.element(word)


def bruhat_leq_permutation(u: Sequence[int], w: Sequence[int]) -> bool:
    """Rank-matrix criterion: u <= w iff r_u(i, j) >= r_w(i, j) for all i, j,
    with r_x(i, j) = #{a <= j : x(a) <= i}."""
    n = len(u)
    for j in range(1, n + 1):
        for i in range(1, n + 1):
            ru = sum(1 for a in range(j) if u[a] <= i)
            rw = sum(1 for a in range(j) if w[a] <= i)
            if ru < rw:
                return False
    return True
