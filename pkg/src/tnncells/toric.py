"""
Exponent sets, their lattice polytopes, and evaluation of the glueing map.

The convex hull is computed exactly by gift wrapping: a facet is rotated
about each of its ridges (the facets of the facet, found recursively) until
it hits the next point, which only needs rational arithmetic on small
integer vectors.
"""

from __future__ import annotations

import math
import random
import warnings
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from . import linalg
from .embed import NotInClosure, SegreKey, cell_coordinates, recover_flag, segre_keys
from .pinning import bruhat_pair
from .subexpr import PositiveSubexpression
from .symbolic import IntLaurentPoly, exponent_vectors
from .weyl import WeylElement, bruhat_leq

__all__ = [
    "ExponentSet", "LatticePolytope", "FaceScan", "ScanReport",
    "build_exponent_set", "hull", "glue_eval", "face_point", "boundary_scan",
    "affine_dimension",
]

Point = tuple[int, ...]


@dataclass
class ExponentSet:
    S: list[Point]
    C: list[list[int]]
    keys: list = field(default_factory=list)
    all_keys: list = field(default_factory=list)

    @property
    def arity(self) -> int:
        return len(self.S[0])

    def polynomials(self) -> list[IntLaurentPoly]:
        """Rebuild p_j = sum_m C[j][m] x^m."""
        n = self.arity
        return [IntLaurentPoly({m: c for m, c in zip(self.S, row) if c}, n) for row in self.C]

    def to_json(self) -> dict:
        return {"S": [list(m) for m in self.S], "C": self.C}


def build_exponent_set(coords: Sequence[IntLaurentPoly], keys: Sequence | None = None) -> ExponentSet:
    """S and the coefficient table of the nonzero coordinates; zero coordinates are dropped."""
    keys = list(keys) if keys is not None else list(range(len(coords)))
    kept = [(k, p) for k, p in zip(keys, coords) if not p.is_zero()]
    if not kept:
        raise ValueError("all coordinates are zero")
    S, C = exponent_vectors([p for _, p in kept])
    for m in range(len(S)):
        if not any(row[m] for row in C):
            raise AssertionError("monomial missing from every coordinate")
    return ExponentSet(S, C, [k for k, _ in kept], keys)


# exact hull


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _int_vector(v: Sequence) -> list[int]:
    den = 1
    for x in v:
        d = Fraction(x).denominator
        den = den * d // math.gcd(den, d)
    ints = [int(Fraction(x) * den) for x in v]
    g = math.gcd(*ints) if any(ints) else 1
    return [x // g for x in ints]


def _affine_frame(points: Sequence[Sequence]) -> tuple[int, list[int]]:
    """(dimension, pivot coordinates) of the affine span."""
    p0 = points[0]
    diffs = [[x - y for x, y in zip(p, p0)] for p in points[1:]]
    diffs = linalg.int_echelon(diffs)
    if not diffs:
        return 0, []
    _, piv = linalg.rref(diffs)
    return len(piv), piv


def affine_dimension(points: Sequence[Sequence]) -> int:
    return _affine_frame(points)[0]


def _project(points, coords):
    return [tuple(p[c] for c in coords) for p in points]


def _parallel(a, c) -> bool:
    return linalg.span_rank([list(a), list(c)]) < 2


class _HullEngine:
    """Facets of every face of conv(points), memoised by point-index set."""

    def __init__(self, points: Sequence[Point]):
        self.points = [tuple(p) for p in points]
        self._facets: dict[frozenset, list[frozenset]] = {}
        self._dims: dict[frozenset, int] = {}

    def dim_of(self, face: frozenset) -> int:
        if face not in self._dims:
            self._dims[face] = affine_dimension([self.points[i] for i in sorted(face)])
        return self._dims[face]

    def facets_of(self, face: frozenset) -> list[frozenset]:
        if face not in self._facets:
            self._facets[face] = [F for F, _, _ in self.facets_with_normals(face)[0]]
        return self._facets[face]

    def facets_with_normals(self, face: frozenset):
        """Facets of the face plus the pivot coordinates their normals live in."""
        idx = sorted(face)
        sub = [self.points[i] for i in idx]
        dim, piv = _affine_frame(sub)
        if dim == 0:
            return [], piv
        local = self._wrap(_project(sub, piv), idx)
        return [(frozenset(idx[j] for j in F), a, b) for F, a, b in local], piv

    def _wrap(self, pts: list[Point], idx: list[int]):
        k = len(pts[0])
        if k == 1:
            lo = min(p[0] for p in pts)
            hi = max(p[0] for p in pts)
            return [(frozenset(i for i, p in enumerate(pts) if p[0] == lo), [-1], -lo),
                    (frozenset(i for i, p in enumerate(pts) if p[0] == hi), [1], hi)]
        a = [1] + [0] * (k - 1)
        b = max(p[0] for p in pts)
        face = frozenset(i for i, p in enumerate(pts) if p[0] == b)
        while affine_dimension([pts[i] for i in face]) < k - 1:
            face, a, b = _rotate(pts, face, a, b)
        found = {face: (a, b)}
        queue = deque([face])
        pos = {g: j for j, g in enumerate(idx)}
        while queue:
            F = queue.popleft()
            a, b = found[F]
            ridges = self.facets_of(frozenset(idx[j] for j in F))
            for ridge in ridges:
                R = frozenset(pos[g] for g in ridge)
                inside = next(i for i in F if i not in R)
                G, na, nb = _rotate(pts, R, a, b, inside)
                if G not in found:
                    found[G] = (na, nb)
                    queue.append(G)
        return [(F, a, b) for F, (a, b) in found.items()]


def _rotate(pts, face: frozenset, a, b, inside: int | None = None):
    """Tilt the supporting hyperplane a·x <= b around ``face`` to pick up more points.

    With ``inside`` given (a point of the current facet outside ``face``), the
    tilt goes away from that facet, which yields the neighbouring facet.
    """
    k = len(a)
    idx = sorted(face)
    p0 = pts[idx[0]]
    rows = [[x - y for x, y in zip(pts[i], p0)] for i in idx[1:]]
    rows = linalg.int_echelon(rows)
    c = next(_int_vector(v) for v in linalg.nullspace(rows, k) if not _parallel(a, v))
    e = _dot(c, p0)
    if inside is not None and _dot(c, pts[inside]) > e:
        c = [-x for x in c]
        e = -e
    # lambda* = max (c.p - e) / (b - a.p) over points off the hyperplane
    best_num, best_den = None, 1
    for p in pts:
        slack = b - _dot(a, p)
        if slack > 0:
            num = _dot(c, p) - e
            if best_num is None or num * best_den > best_num * slack:
                best_num, best_den = num, slack
    normal = [ci * best_den + best_num * ai for ci, ai in zip(c, a)]
    offset = e * best_den + best_num * b
    both = _int_vector(normal + [offset])
    normal, offset = both[:-1], both[-1]
    new_face = frozenset(i for i, p in enumerate(pts) if _dot(normal, p) == offset)
    return new_face, normal, offset


@dataclass
class LatticePolytope:
    points: list[Point]

    @cached_property
    def _frame(self):
        return _affine_frame(self.points)

    @property
    def dim(self) -> int:
        return self._frame[0]

    @property
    def ambient_dim(self) -> int:
        return len(self.points[0])

    @cached_property
    def _engine(self) -> _HullEngine:
        return _HullEngine(self.points)

    @cached_property
    def facets(self) -> list[tuple[frozenset, list[int], int]]:
        """(point indices, normal, offset) with normal·x <= offset on all points.

        For lower-dimensional polytopes the normal only involves the pivot
        coordinates of the affine hull.
        """
        full = frozenset(range(len(self.points)))
        local, piv = self._engine.facets_with_normals(full)
        out = []
        for F, a, b in local:
            normal = [0] * self.ambient_dim
            for c, x in zip(piv, a):
                normal[c] = x
            out.append((F, normal, b))
        self._engine._facets.setdefault(full, [F for F, _, _ in local])
        return sorted(out, key=lambda f: sorted(f[0]))

    @cached_property
    def vertices(self) -> list[Point]:
        return sorted(self.points[next(iter(F))] for F in self.faces if len(F) == 1
                      or self.face_dim(F) == 0)

    @cached_property
    def faces(self) -> list[frozenset]:
        """All nonempty faces as point-index sets (the polytope itself included)."""
        seen: set[frozenset] = set()
        stack = [frozenset(range(len(self.points)))]
        while stack:
            face = stack.pop()
            if face in seen:
                continue
            seen.add(face)
            stack.extend(self._engine.facets_of(face))
        return sorted(seen, key=lambda F: (self.face_dim(F), sorted(F)))

    def proper_faces(self) -> list[frozenset]:
        full = frozenset(range(len(self.points)))
        return [F for F in self.faces if F != full]

    def face_dim(self, face: frozenset) -> int:
        return self._engine.dim_of(face)

    def f_vector(self) -> list[int]:
        counts = [0] * (self.dim + 1)
        for F in self.faces:
            counts[self.face_dim(F)] += 1
        return counts

    def contains(self, x: Sequence) -> bool:
        return all(_dot(a, x) <= b for _, a, b in self.facets)

    def to_json(self) -> dict:
        return {"dim": self.dim, "vertices": [list(v) for v in self.vertices],
                "facets": [{"normal": a, "offset": b} for _, a, b in self.facets]}


def hull(es: ExponentSet | Sequence[Point]) -> LatticePolytope:
    points = es.S if isinstance(es, ExponentSet) else [tuple(p) for p in es]
    if not points:
        raise ValueError("empty point set")
    return LatticePolytope(list(points))


# glueing map

def _is_face_supported(es: ExponentSet, support: frozenset, poly: LatticePolytope | None) -> bool:
    poly = poly or hull(es)
    return support in set(poly.faces)


def glue_eval(es: ExponentSet, x: Sequence | Mapping[Point, Fraction],
              polytope: LatticePolytope | None = None, check_face: bool = True) -> list[Fraction]:
    """Projective vector [g_1(x) : ... : g_N(x)] with g_j(x) = sum_m C[j][m] x_m."""
    if isinstance(x, Mapping):
        x = [Fraction(x.get(m, 0)) for m in es.S]
    x = [Fraction(v) for v in x]
    if len(x) != len(es.S):
        raise ValueError("x must have one entry per exponent vector")
    if any(v < 0 for v in x):
        raise ValueError("x must be nonnegative")
    if not any(x):
        raise ValueError("x must be nonzero")
    if check_face:
        support = frozenset(m for m, v in enumerate(x) if v)
        if not _is_face_supported(es, support, polytope):
            warnings.warn("support of x is not the point set of a face", stacklevel=2)
    return [sum((Fraction(c) * xm for c, xm in zip(row, x) if c), Fraction(0)) for row in es.C]


def face_point(es: ExponentSet, face: frozenset, t: Sequence[Fraction]) -> list[Fraction]:
    """The torus-orbit point x_m = t^m on the face, 0 off the face."""
    out = []
    for m, e in enumerate(es.S):
        if m in face:
            v = Fraction(1)
            for ti, k in zip(t, e):
                v *= Fraction(ti) ** k
            out.append(v)
        else:
            out.append(Fraction(0))
    return out


def full_segre_vector(es: ExponentSet, values: Sequence[Fraction]) -> dict:
    vec = {key: Fraction(0) for key in es.all_keys}
    for key, val in zip(es.keys, values):
        vec[key] = val
    return vec


@dataclass
class FaceScan:
    face: list[int]
    face_dim: int
    cell: tuple[WeylElement, WeylElement] | None
    consistent: bool
    sandwiched: bool
    error: str | None = None

    def to_json(self) -> dict:
        return {"face": self.face, "face_dim": self.face_dim,
                "cell": None if self.cell is None else
                {"v": self.cell[0].to_json(), "w": self.cell[1].to_json()},
                "consistent": self.consistent, "sandwiched": self.sandwiched,
                "error": self.error}


@dataclass
class ScanReport:
    v: WeylElement
    w: WeylElement
    faces: list[FaceScan]
    closure_cells: int
    hit_cells: int

    @property
    def ok(self) -> bool:
        return all(f.consistent and f.sandwiched and f.error is None for f in self.faces)

    def to_json(self) -> dict:
        return {"cell": {"v": self.v.to_json(), "w": self.w.to_json()}, "ok": self.ok,
                "coverage": {"closure_boundary_cells": self.closure_cells,
                             "cells_hit": self.hit_cells},
                "faces": [f.to_json() for f in self.faces]}


def _closure_size(v: WeylElement, w: WeylElement) -> int:
    from .weyl import enumerate_elements
    elts = [x for x in enumerate_elements(v.cartan) if bruhat_leq(v, x) and bruhat_leq(x, w)]
    return sum(1 for a in elts for b in elts if bruhat_leq(a, b))


def boundary_scan(pse: PositiveSubexpression, seed: int = 0, samples: int = 3,
                  matrix=None) -> ScanReport:
    """Identify the cell hit by the glueing map on every proper face of the polytope."""
    rng = random.Random(seed)
    v, w = pse.v, pse.w
    keys, polys = cell_coordinates(pse, matrix)
    es = build_exponent_set(polys, keys)
    poly = hull(es)
    n = len(keys[0]) + 1
    scans = []
    hit = set()
    for face in poly.proper_faces():
        points = [[Fraction(1)] * es.arity]
        points += [[Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(es.arity)]
                   for _ in range(samples)]
        cells = set()
        error = None
        for t in points:
            x = face_point(es, face, t)
            vals = glue_eval(es, x, poly, check_face=False)
            try:
                cells.add(bruhat_pair(recover_flag(full_segre_vector(es, vals), n)))
            except NotInClosure as exc:
                error = str(exc)
        cell = next(iter(cells)) if len(cells) == 1 else None
        sandwiched = all(
            bruhat_leq(v, c[0]) and bruhat_leq(c[0], c[1]) and bruhat_leq(c[1], w)
            and c != (v, w) for c in cells)
        if cell is not None:
            hit.add(cell)
        scans.append(FaceScan(sorted(face), poly.face_dim(face), cell,
                              len(cells) == 1, sandwiched, error))
    return ScanReport(v, w, scans, _closure_size(v, w) - 1, len(hit))
