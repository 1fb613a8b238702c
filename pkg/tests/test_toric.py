import random
import warnings
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from tnncells.embed import cell_coordinates, recover_flag, segre_coordinates
from tnncells.pinning import bruhat_pair, cell_representative
from tnncells.subexpr import positive_subexpression
from tnncells.symbolic import IntLaurentPoly
from tnncells.toric import (affine_dimension, boundary_scan, build_exponent_set, face_point,
                            glue_eval, hull)
from tnncells.weyl import bruhat_leq, enumerate_elements, parse_cartan

A1, A2, A3 = parse_cartan("A1"), parse_cartan("A2"), parse_cartan("A3")


def big_cell_es(cd):
    pse = positive_subexpression(cd, cd.longest().word, cd.identity())
    keys, polys = cell_coordinates(pse)
    return pse, build_exponent_set(polys, keys)


def test_exponent_set_examples():
    t = IntLaurentPoly.var(0, 1)
    es = build_exponent_set([IntLaurentPoly.constant(1, 1), t])
    assert es.S == [(0,), (1,)] and es.C == [[1, 0], [0, 1]]
    assert build_exponent_set([IntLaurentPoly.constant(3, 1)]).S == [(0,)]
    with pytest.raises(ValueError):
        build_exponent_set([IntLaurentPoly({}, 1)])
    _, es = big_cell_es(A2)
    assert set(es.S) == {(0, 0, 0), (1, 0, 0), (0, 0, 1), (0, 1, 1), (0, 1, 0), (1, 1, 0),
                         (1, 1, 1), (2, 1, 0), (0, 2, 1), (1, 2, 1)}
    assert es.polynomials() == [p for p in cell_coordinates(big_cell_es(A2)[0])[1] if not p.is_zero()]


def test_small_hulls():
    assert hull([(0,), (1,)]).dim == 1 and len(hull([(0,), (1,)]).vertices) == 2
    assert hull([(3, 4)]).dim == 0
    cube = hull(list(product((0, 1), repeat=3)))
    assert cube.f_vector() == [8, 12, 6, 1]
    simplex = hull([(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])
    assert simplex.f_vector() == [5, 10, 10, 5, 1]
    # a flat square in 3-space
    sq = hull([(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1), (1, 1, 1)])
    assert sq.dim == 2 and len(sq.vertices) == 4


def test_A2_big_cell_polytope():
    _, es = big_cell_es(A2)
    P = hull(es)
    assert P.dim == 3
    assert P.f_vector() == [8, 13, 7, 1]
    for S, a, b in P.facets:
        assert all(sum(x * y for x, y in zip(a, p)) <= b for p in es.S)
        assert all(sum(x * y for x, y in zip(a, es.S[i])) == b for i in S)


def _scipy_vertices(points):
    arr = np.array(points, dtype=float)
    arr = arr - arr[0]
    basis = np.linalg.svd(arr)[2][:np.linalg.matrix_rank(arr)]
    return {tuple(points[i]) for i in ConvexHull(arr @ basis.T).vertices}


def test_vertices_match_scipy():
    rng = random.Random(5)
    for _ in range(15):
        pts = list({tuple(rng.randint(0, 4) for _ in range(3)) for _ in range(12)})
        if affine_dimension(pts) < 3:
            continue
        assert set(hull(pts).vertices) == _scipy_vertices(pts)
    _, es = big_cell_es(A2)
    assert set(hull(es).vertices) == _scipy_vertices(es.S)


def test_dimension_all_A2_cells():
    for w in enumerate_elements(A2):
        for v in enumerate_elements(A2):
            if bruhat_leq(v, w):
                keys, polys = cell_coordinates(positive_subexpression(A2, w.word, v))
                assert hull(build_exponent_set(polys, keys)).dim == len(w) - len(v)


def test_glue_eval_interior_and_errors():
    pse, es = big_cell_es(A2)
    t = [Fraction(2), Fraction(3, 5), Fraction(7)]
    full = frozenset(range(len(es.S)))
    vals = glue_eval(es, face_point(es, full, t))
    g = cell_representative(pse, symbolic=False, params=t)
    sv = segre_coordinates(g)
    direct = [sv[k] for k in es.keys]
    ratio = direct[0] / vals[0]
    assert [ratio * x for x in vals] == direct
    with pytest.raises(ValueError):
        glue_eval(es, [0] * len(es.S))
    with pytest.raises(ValueError):
        glue_eval(es, [-1] + [1] * (len(es.S) - 1))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        x = [0] * len(es.S)
        P = hull(es)
        edges = {F for F in P.faces if P.face_dim(F) == 1}
        verts = [i for i in range(len(es.S)) if frozenset({i}) in set(P.faces)]
        a, b = next((a, b) for a in verts for b in verts
                    if a < b and not any({a, b} <= F for F in edges))
        x[a] = x[b] = 1  # two vertices not joined by an edge
        glue_eval(es, x)
    assert caught


def test_sl2_boundary():
    pse = positive_subexpression(A1, (1,), A1.identity())
    keys, polys = cell_coordinates(pse)
    es = build_exponent_set(polys, keys)
    assert es.S == [(0,), (1,)]
    for x, cell in (([0, 1], (A1.s(1), A1.s(1))), ([1, 0], (A1.identity(), A1.identity()))):
        vals = glue_eval(es, x)
        sv = dict(zip(es.all_keys, [Fraction(0)] * len(es.all_keys)))
        sv.update(zip(es.keys, vals))
        assert bruhat_pair(recover_flag(sv, 2)) == cell
    rep = boundary_scan(pse)
    assert rep.ok
    assert {f.cell for f in rep.faces} == {(A1.identity(), A1.identity()), (A1.s(1), A1.s(1))}


def test_boundary_scan_A2():
    pse, _ = big_cell_es(A2)
    rep = boundary_scan(pse, seed=1)
    assert rep.ok and len(rep.faces) == 8 + 13 + 7
    assert rep.to_json()["coverage"]["cells_hit"] <= rep.closure_cells
    point = boundary_scan(positive_subexpression(A2, (1, 2), A2.element((1, 2))))
    assert point.faces == []
