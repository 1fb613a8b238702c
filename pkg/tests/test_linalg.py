from fractions import Fraction

from hypothesis import given, strategies as st

from oracles import det as det_oracle
from tnncells import linalg

small = st.integers(-4, 4)
mats = st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n),
                                                     min_size=n, max_size=n))


@given(mats)
def test_det_matches_leibniz(m):
    assert linalg.det(m) == det_oracle([[Fraction(x) for x in r] for r in m])


@given(mats)
def test_rank_nullspace(m):
    n = len(m[0])
    null = linalg.nullspace(m, n)
    assert linalg.rank(m) + len(null) == n
    for v in null:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in m)


@given(mats)
def test_inverse(m):
    if linalg.det(m) == 0:
        return
    inv = linalg.inverse(m)
    assert linalg.matmul(m, inv) == linalg.to_fractions(linalg.identity(len(m)))


def test_intersection():
    u = [[1, 0, 0], [0, 1, 0]]
    v = [[0, 1, 1], [0, 0, 1]]
    cap = linalg.intersect(u, v)
    assert len(cap) == 1
    assert cap[0][0] == 0 and cap[0][2] == 0


def test_int_echelon_rank():
    rows = [[2, 4, 6], [1, 2, 3], [0, 1, 1]]
    assert len(linalg.int_echelon(rows)) == 2
    assert linalg.rref([[Fraction(1, 2), 1], [1, 2]])[1] == [0]
