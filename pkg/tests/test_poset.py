import random

import pytest

from oracles import (bruhat_tableau, coxeter_census, full_flag_census, mobius_by_inversion,
                     parabolic_triples)
from tnncells.pinning import Flag, standard_flag
from tnncells.poset import (CellIndex, NotInQJ, ParabolicCellIndex, enumerate_QJ,
                            enumerate_full_flag_cells, euler_char_closure, eulerian_check,
                            identify_partial_cell, project_closures, remove_relation,
                            sample_projected)
from tnncells.weyl import parse_cartan, to_permutation

A1, A2, A3, C2 = (parse_cartan(t) for t in ("A1", "A2", "A3", "C2"))


def test_censuses_against_oracles():
    assert enumerate_full_flag_cells(A1).census() == [2, 1]
    assert enumerate_full_flag_cells(A2).census() == full_flag_census(3) == [6, 8, 4, 1]
    assert enumerate_full_flag_cells(A3).census() == full_flag_census(4)
    assert enumerate_full_flag_cells(C2).census() == coxeter_census(C2.cartan_matrix)
    assert enumerate_full_flag_cells(C2).census() == [8, 12, 8, 4, 1]
    assert len(enumerate_full_flag_cells(A3)) == 213


def test_closure_order_against_tableau():
    p = enumerate_full_flag_cells(A3)
    perm = {c: (to_permutation(c.v), to_permutation(c.w)) for c in p.elements}
    rng = random.Random(0)
    for _ in range(400):
        i, j = rng.randrange(len(p)), rng.randrange(len(p))
        (v1, w1), (v2, w2) = perm[p.elements[i]], perm[p.elements[j]]
        assert p.leq(i, j) == (bruhat_tableau(v2, v1) and bruhat_tableau(w1, w2))


def test_poset_structure():
    p = enumerate_full_flag_cells(A2)
    assert p.is_partial_order() and p.is_graded_by_dim()
    assert all(euler_char_closure(p, i) == 1 for i in range(len(p)))
    top = p.index(CellIndex(A2.identity(), A2.longest()))
    assert p.closure(top) == list(range(len(p)))


@pytest.mark.parametrize("cd", [A2, C2])
def test_mobius_against_matrix_inverse(cd):
    p = enumerate_full_flag_cells(cd)
    n = len(p)
    mu = mobius_by_inversion(list(range(n)), lambda a, b: p.leq(a, b))
    for x in range(n):
        for y in p.below[x]:
            assert mu[y][x] == (-1) ** (p.rank(x) - p.rank(y))
    assert eulerian_check(p).ok


def test_eulerian_negative_control():
    p = enumerate_full_flag_cells(A2)
    top = p.index(CellIndex(A2.identity(), A2.longest()))
    low = next(i for i in range(len(p)) if p.rank(i) == 0)
    rep = eulerian_check(remove_relation(p, low, top))
    assert not rep.ok and rep.violation is not None


def _as_perms(cells):
    return sorted((to_permutation(c.x), to_permutation(c.u), to_permutation(c.w), c.dim)
                  for c in cells)


@pytest.mark.parametrize("name, J, count", [("A2", (1,), 7), ("A2", (2,), 7), ("A3", (2,), 85),
                                            ("A3", (1, 3), 33), ("A3", (1, 2, 3), 1)])
def test_QJ_against_brute_force(name, J, count):
    cd = parse_cartan(name)
    cells = enumerate_QJ(cd, J)
    assert len(cells) == count
    assert _as_perms(cells) == sorted(parabolic_triples(cd.rank + 1, set(J)))


def test_QJ_empty_is_full_flag():
    cells = enumerate_QJ(A2, ())
    assert len(cells) == 19
    assert all(c.u == A2.identity() for c in cells)


def test_identify_examples():
    E = standard_flag(3)
    c = identify_partial_cell(E.project([2]), (1,))
    assert c == ParabolicCellIndex(A2.s(1), A2.s(1), A2.identity())
    with pytest.raises(ValueError):
        identify_partial_cell(E, (1,))


def test_round_trip_samples():
    rng = random.Random(1)
    for J in ((1,), (2,)):
        for t in enumerate_QJ(A2, J):
            for _ in range(5):
                assert identify_partial_cell(sample_projected(A2, t.x, t.w * t.u, J, rng), J) == t


def test_project_closures_A2():
    for J in ((1,), (2,)):
        rep = project_closures(A2, J, samples=3)
        assert rep.ok, rep.problems
        p = rep.poset
        assert p.is_partial_order() and p.census() == [3, 3, 1]
        assert all(euler_char_closure(p, i) == 1 for i in range(len(p)))
        assert eulerian_check(p).ok


def test_json_and_csv():
    p = enumerate_full_flag_cells(A1)
    data = p.to_json()
    assert len(data["cells"]) == 3 and data["covers"] == [[0, 2], [1, 2]]
    assert p.census_csv() == "dim,cells\n0,2\n1,1\n"
    assert NotInQJ.__mro__[1] is ValueError
