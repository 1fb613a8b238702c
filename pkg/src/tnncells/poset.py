"""
Cell posets of the totally nonnegative full and partial flag varieties.

Full-flag cells are pairs v <= w with closure order
(v', w') <= (v, w) iff v <= v' <= w' <= w.  Partial-flag cells are triples
(x, u, w) in Q^J; their closure order is computed geometrically by sampling
full-flag cells, forgetting the subspaces with dimension in J and reading off
the triple of the image.
"""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .pinning import (Flag, bruhat_pair, cell_representative, opposite_flag,
                      random_positive_point, refine_toward, relative_position, standard_flag)
from .subexpr import positive_subexpression
from .weyl import (CartanData, WeylElement, bruhat_leq, enumerate_elements,
                   longest_element, parabolic_decompose)

__all__ = [
    "CellIndex", "ParabolicCellIndex", "CellPoset", "EulerianReport", "NotInQJ",
    "enumerate_full_flag_cells", "euler_char_closure", "eulerian_check", "remove_relation",
    "enumerate_QJ", "identify_partial_cell", "sample_projected", "project_closures",
    "ProjectionReport",
]


class NotInQJ(ValueError):
    """An identified triple that is not in Q^J."""


@dataclass(frozen=True)
class CellIndex:
    v: WeylElement
    w: WeylElement

    @property
    def dim(self) -> int:
        return len(self.w) - len(self.v)

    def to_json(self) -> dict:
        return {"v": self.v.to_json(), "w": self.w.to_json(), "dim": self.dim}

    def label(self) -> str:
        return f"({self.v!r},{self.w!r})"


@dataclass(frozen=True)
class ParabolicCellIndex:
    x: WeylElement
    u: WeylElement
    w: WeylElement

    @property
    def dim(self) -> int:
        return len(self.w) + len(self.u) - len(self.x)

    def to_json(self) -> dict:
        return {"x": self.x.to_json(), "u": self.u.to_json(), "w": self.w.to_json(),
                "dim": self.dim}

    def label(self) -> str:
        return f"({self.x!r},{self.u!r},{self.w!r})"


def _key(c) -> tuple:
    if isinstance(c, CellIndex):
        return (c.dim, len(c.w), c.v.word, c.w.word)
    return (c.dim, len(c.w), c.x.word, c.u.word, c.w.word)


@dataclass
class CellPoset:
    """Finite poset given by, for each element, the set of indices below or equal to it."""

    elements: list
    below: list[frozenset[int]]

    @classmethod
    def from_relation(cls, elements: Sequence, leq: Callable[[object, object], bool]) -> "CellPoset":
        elements = list(elements)
        below = [frozenset(j for j, b in enumerate(elements) if leq(b, a)) for a in elements]
        return cls(elements, below)

    def __len__(self):
        return len(self.elements)

    def rank(self, i: int) -> int:
        return self.elements[i].dim

    def leq(self, i: int, j: int) -> bool:
        return i in self.below[j]

    def index(self, c) -> int:
        return self.elements.index(c)

    def closure(self, i: int) -> list[int]:
        return sorted(self.below[i])

    @property
    def covers(self) -> list[tuple[int, int]]:
        out = []
        for j, lows in enumerate(self.below):
            strict = lows - {j}
            for i in strict:
                if not any(i in self.below[k] for k in strict if k != i):
                    out.append((i, j))
        return sorted(out)

    def is_partial_order(self) -> bool:
        n = len(self)
        for j in range(n):
            if j not in self.below[j]:
                return False
            for i in self.below[j]:
                if i != j and j in self.below[i]:
                    return False
                if not self.below[i] <= self.below[j]:
                    return False
        return True

    def is_graded_by_dim(self) -> bool:
        """Every cover raises the dimension by exactly one."""
        return all(self.rank(j) - self.rank(i) == 1 for i, j in self.covers)

    def census(self) -> list[int]:
        top = max((c.dim for c in self.elements), default=-1)
        counts = [0] * (top + 1)
        for c in self.elements:
            counts[c.dim] += 1
        return counts

    def census_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["dim", "cells"])
        for d, k in enumerate(self.census()):
            writer.writerow([d, k])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {"cells": [c.to_json() for c in self.elements],
                "covers": [[i, j] for i, j in self.covers]}


def enumerate_full_flag_cells(cd: CartanData, guard: int = 40320) -> CellPoset:
    elts = enumerate_elements(cd, guard=guard)
    cells = sorted((CellIndex(v, w) for w in elts for v in elts if bruhat_leq(v, w)), key=_key)
    return CellPoset.from_relation(
        cells, lambda a, b: bruhat_leq(b.v, a.v) and bruhat_leq(a.w, b.w))


def euler_char_closure(p: CellPoset, i: int) -> int:
    return sum((-1) ** p.rank(j) for j in p.below[i])


@dataclass
class EulerianReport:
    ok: bool
    intervals: int
    violation: dict | None = None

    def to_json(self) -> dict:
        return {"eulerian": self.ok, "intervals_checked": self.intervals,
                "first_violation": self.violation}


def eulerian_check(p: CellPoset) -> EulerianReport:
    """Möbius function of the poset with a bottom element 0̂ adjoined, against (-1)^rank."""
    n = len(p)
    ranks = [-1] + [p.rank(i) for i in range(n)]
    # index 0 is the adjoined bottom; element i of p becomes i + 1
    below = [frozenset({0})] + [frozenset({0} | {k + 1 for k in p.below[i]}) for i in range(n)]
    order = sorted(range(n + 1), key=lambda i: ranks[i])
    count = 0
    for x in range(n + 1):
        mu = {x: 1}
        for y in order:
            if y == x or x not in below[y]:
                continue
            mu[y] = -sum(mu[z] for z in below[y] if z != y and z in mu)
            count += 1
            if mu[y] != (-1) ** (ranks[y] - ranks[x]):
                def name(i):
                    return "0̂" if i == 0 else p.elements[i - 1].label()
                return EulerianReport(False, count, {"lower": name(x), "upper": name(y),
                                                     "mobius": mu[y],
                                                     "expected": (-1) ** (ranks[y] - ranks[x])})
    return EulerianReport(True, count)


def remove_relation(p: CellPoset, i: int, j: int) -> CellPoset:
    """Copy of ``p`` with the single relation i < j dropped (for negative controls)."""
    below = list(p.below)
    below[j] = below[j] - {i}
    return CellPoset(list(p.elements), below)


# partial flags

def _dims_kept(cd: CartanData, J: Iterable[int]) -> list[int]:
    J = set(J)
    return [d for d in range(1, cd.rank + 1) if d not in J]


def enumerate_QJ(cd: CartanData, J: Iterable[int]) -> list[ParabolicCellIndex]:
    J = tuple(sorted(set(J)))
    xs = enumerate_elements(cd, "W^J_max", J)
    us = enumerate_elements(cd, "W_J", J)
    ws = enumerate_elements(cd, "W^J", J)
    out = [ParabolicCellIndex(x, u, w) for w in ws for u in us for x in xs
           if bruhat_leq(x, w * u)]
    return sorted(out, key=_key)


def in_QJ(cd: CartanData, J: Iterable[int], c: ParabolicCellIndex) -> bool:
    J = frozenset(J)
    w0J = longest_element(cd, J)
    wJ, _ = parabolic_decompose(c.w, J)
    xJ, _ = parabolic_decompose(c.x, J)
    return (wJ == c.w and all(i in J for i in c.u.word) and xJ * w0J == c.x
            and bruhat_leq(c.x, c.w * c.u))


def identify_partial_cell(p: Flag, J: Iterable[int], cd: CartanData | None = None) -> ParabolicCellIndex:
    """The triple (x, u, w) of Q^J whose stratum contains the partial flag ``p``.

    Refine ``p`` toward the standard flag (giving B_L) and toward the opposite
    flag (giving B_R); then w = pos(E, B_L), u = pos(B_L, B_R) and
    x = w_0 · pos(E_opp, B_R).
    """
    n = p.n
    cd = cd or CartanData("A", n - 1)
    J = tuple(sorted(set(J)))
    if list(p.dims) != _dims_kept(cd, J):
        raise ValueError(f"flag dimensions {p.dims} do not match J = {J}")
    E, Eop = standard_flag(n), opposite_flag(n)
    left = refine_toward(p, E)
    right = refine_toward(p, Eop)
    w = relative_position(E, left)
    u = relative_position(left, right)
    x = longest_element(cd) * relative_position(Eop, right)
    c = ParabolicCellIndex(x, u, w)
    if not in_QJ(cd, J, c):
        raise NotInQJ(f"identified {c.label()} is not in Q^J for J = {J}")
    return c


def sample_projected(cd: CartanData, v: WeylElement, w: WeylElement, J: Iterable[int],
                     rng: random.Random) -> Flag:
    """Random point of the full-flag cell (v, w), with the subspaces of dimension in J forgotten."""
    pse = positive_subexpression(cd, w.word, v)
    g = cell_representative(pse, symbolic=False, params=random_positive_point(pse.n_params, rng))
    return Flag.from_matrix(g).project(_dims_kept(cd, J))


@dataclass
class ProjectionReport:
    poset: CellPoset
    round_trip_ok: bool
    sample_independent: bool
    dims_drop: bool
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.round_trip_ok and self.sample_independent and self.dims_drop

    def to_json(self) -> dict:
        return {"poset": self.poset.to_json(), "round_trip": self.round_trip_ok,
                "sample_independent": self.sample_independent,
                "boundary_dims_drop": self.dims_drop, "problems": self.problems}


def project_closures(cd: CartanData, J: Iterable[int], samples: int = 5, seed: int = 0) -> ProjectionReport:
    """Closure poset on Q^J from the images of full-flag closure cells."""
    J = tuple(sorted(set(J)))
    rng = random.Random(seed)
    triples = enumerate_QJ(cd, J)
    index = {c: k for k, c in enumerate(triples)}
    full = enumerate_full_flag_cells(cd)
    image: dict[CellIndex, ParabolicCellIndex | None] = {}
    problems = []
    independent = True
    for c in full.elements:
        found = {identify_partial_cell(sample_projected(cd, c.v, c.w, J, rng), J, cd)
                 for _ in range(samples)}
        if len(found) != 1:
            independent = False
            problems.append(f"cell {c.label()} maps to {sorted(t.label() for t in found)}")
        image[c] = next(iter(found))
    round_trip = True
    dims_drop = True
    below = []
    for t in triples:
        top = CellIndex(t.x, t.w * t.u)
        if image[top] != t:
            round_trip = False
            problems.append(f"{t.label()} identified as {image[top].label()}")
        k = full.index(top)
        hit = {index[image[full.elements[j]]] for j in full.below[k]}
        for h in hit:
            if triples[h] != t and triples[h].dim >= t.dim:
                dims_drop = False
                problems.append(f"boundary {triples[h].label()} of {t.label()} is not lower-dimensional")
        below.append(frozenset(hit | {index[t]}))
    return ProjectionReport(CellPoset(triples, below), round_trip, independent, dims_drop, problems)
