"""
Diagram folding: a non-simply-laced group as the fixed points of a diagram
automorphism σ of a simply-laced one.

Nodes of the folded diagram are the σ-orbits, numbered by increasing minimum
node.  A folded letter k expands to the nodes of the k-th orbit in ascending
order; these commute because an orbit contains no two adjacent nodes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg
from .embed import CertificateReport, certify_positive
from .pinning import NotRealizable, word_matrix
from .subexpr import NotReduced, PositiveSubexpression, positive_subexpression
from .symbolic import IntLaurentPoly
from .weyl import CartanData, WeylElement, parse_cartan

__all__ = [
    "FoldingData", "standard_folding", "expand_word", "expand_subexpression",
    "folded_cell_representative", "tau", "is_tau_fixed", "certify_folded",
    "expand_element", "check_expansion",
]


@dataclass(frozen=True)
class FoldingData:
    dot_cartan: CartanData
    sigma: tuple[int, ...]  # sigma[i-1] is the image of node i

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(self.sigma))
        n = self.dot_cartan.rank
        if sorted(self.sigma) != list(range(1, n + 1)):
            raise ValueError("sigma is not a permutation of the nodes")
        a = self.dot_cartan.cartan_matrix
        s = self.sigma
        if any(a[s[i] - 1][s[j] - 1] != a[i][j] for i in range(n) for j in range(n)):
            raise ValueError("sigma does not preserve the Cartan matrix")
        for orb in self.orbits:
            if any(a[i - 1][j - 1] != 0 for i in orb for j in orb if i != j):
                raise ValueError(f"orbit {orb} contains adjacent nodes")

    @cached_property
    def orbits(self) -> tuple[tuple[int, ...], ...]:
        seen: set[int] = set()
        out = []
        for i in range(1, self.dot_cartan.rank + 1):
            if i in seen:
                continue
            orb = [i]
            j = self.sigma[i - 1]
            while j != i:
                orb.append(j)
                j = self.sigma[j - 1]
            seen.update(orb)
            out.append(tuple(sorted(orb)))
        return tuple(out)

    def folded_matrix(self) -> list[list[int]]:
        """a_{kl} = sum over i in orbit k of a_{ij}, for any fixed j in orbit l."""
        a = self.dot_cartan.cartan_matrix
        return [[sum(a[i - 1][ol[0] - 1] for i in ok) for ol in self.orbits] for ok in self.orbits]

    @cached_property
    def cartan(self) -> CartanData:
        mat = self.folded_matrix()
        r = len(mat)
        for label in "ABCDEFG":
            try:
                cd = CartanData(label, r)
            except ValueError:
                continue
            if [list(row) for row in cd.cartan_matrix] == mat:
                return cd
        raise ValueError(f"folded Cartan matrix {mat} is not a standard labelled type")

    def to_json(self) -> dict:
        return {"dot_type": self.dot_cartan.to_json(), "sigma": list(self.sigma)}

    @classmethod
    def from_json(cls, data: dict) -> "FoldingData":
        return cls(CartanData.from_json(data["dot_type"]), tuple(data["sigma"]))


def standard_folding(target: CartanData | str) -> FoldingData:
    """C_n from A_{2n-1} (σ = reversal) or B_n from D_{n+1} (σ swaps the two short legs)."""
    cd = parse_cartan(target) if isinstance(target, str) else target
    n = cd.rank
    if cd.type_label == "C":
        return FoldingData(CartanData("A", 2 * n - 1), tuple(range(2 * n - 1, 0, -1)))
    if cd.type_label == "B" and n >= 3:
        sigma = list(range(1, n + 2))
        sigma[n - 1], sigma[n] = n + 1, n
        return FoldingData(CartanData("D", n + 1), tuple(sigma))
    raise ValueError(f"no shipped folding onto {cd!r}")


def _expanded_positions(fd: FoldingData, word: Sequence[int]) -> list[list[int]]:
    """For each folded position, the 1-based positions it occupies in the expansion."""
    out = []
    r = 1
    for k in word:
        size = len(fd.orbits[k - 1])
        out.append(list(range(r, r + size)))
        r += size
    return out


def expand_word(fd: FoldingData, word: Iterable[int]) -> tuple[int, ...]:
    word = tuple(word)
    if len(fd.cartan.element(word)) != len(word):
        raise NotReduced(f"{word} is not reduced in {fd.cartan!r}")
    out = tuple(i for k in word for i in fd.orbits[k - 1])
    if len(fd.dot_cartan.element(out)) != len(out):
        raise AssertionError("orbit expansion of a reduced word is not reduced")
    return out


def expand_element(fd: FoldingData, w: WeylElement) -> WeylElement:
    return fd.dot_cartan.element(expand_word(fd, w.word))


def expand_subexpression(fd: FoldingData, pse: PositiveSubexpression) -> PositiveSubexpression:
    word = expand_word(fd, pse.word)
    blocks = _expanded_positions(fd, pse.word)
    v_plus = tuple(r for p in pse.v_plus for r in blocks[p - 1])
    return PositiveSubexpression(fd.dot_cartan, word, v_plus)


def folded_cell_representative(fd: FoldingData, pse: PositiveSubexpression):
    """Symbolic representative on the expanded word, one variable per folded parameter.

    Each folded variable is repeated across all letters of its orbit.
    """
    if fd.dot_cartan.type_label != "A":
        raise NotRealizable(f"no matrix pinning for {fd.dot_cartan!r}")
    k = pse.n_params
    taken = set(pse.v_plus)
    factors = []
    var = 0
    for p, letter in enumerate(pse.word, start=1):
        orb = fd.orbits[letter - 1]
        if p in taken:
            factors.extend(("s", i) for i in orb)
        else:
            t = IntLaurentPoly.var(var, k)
            factors.extend(("y", i, t) for i in orb)
            var += 1
    m = word_matrix(factors, fd.dot_cartan.rank + 1)
    return tuple(tuple(x if isinstance(x, IntLaurentPoly) else IntLaurentPoly.constant(x, k)
                       for x in row) for row in m)


def _tau_matrix(n: int) -> list[list[int]]:
    m = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        m[n - k][k - 1] = (-1) ** k
    return m


def tau(g: Sequence[Sequence]) -> list[list[Fraction]]:
    """The automorphism g -> M (g^{-1})^T M^{-1} of SL_n, M e_k = (-1)^k e_{n+1-k}.

    It sends y_i(t) to y_{n-i}(t) and fixes every ṡ_i ṡ_{n-i}, so it is the
    matrix form of the reversal of the A_{n-1} diagram.
    """
    n = len(g)
    m = linalg.to_fractions(_tau_matrix(n))
    return linalg.matmul(linalg.matmul(m, linalg.transpose(linalg.inverse(g))), linalg.inverse(m))


def is_tau_fixed(g: Sequence[Sequence]) -> bool:
    return tau(g) == linalg.to_fractions(g)


def certify_folded(fd: FoldingData, pse: PositiveSubexpression) -> CertificateReport:
    return certify_positive(pse, matrix=folded_cell_representative(fd, pse), w_word=pse.word)


def check_expansion(fd: FoldingData, w: WeylElement, v: WeylElement) -> bool:
    """Folded positive subexpression, expanded, equals the one computed upstairs."""
    pse = positive_subexpression(fd.cartan, w.word, v)
    exp = expand_subexpression(fd, pse)
    direct = positive_subexpression(fd.dot_cartan, exp.word, expand_element(fd, v))
    return exp == direct
