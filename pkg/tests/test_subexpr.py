import pytest
from hypothesis import given, strategies as st

from oracles import brute_positive_subexpressions, perm_of_word
from tnncells.subexpr import (NotBelow, NotReduced, PositiveSubexpression,
                              is_positive_subexpression, positive_subexpression)
from tnncells.weyl import bruhat_leq, enumerate_elements, parse_cartan, reduced_words, to_permutation

A2, A3 = parse_cartan("A2"), parse_cartan("A3")


@pytest.mark.parametrize("v, expected", [((), ()), ((1,), (3,)), ((2,), (2,)),
                                         ((1, 2), (1, 2)), ((2, 1), (2, 3)),
                                         ((1, 2, 1), (1, 2, 3))])
def test_A2_big_cell_word(v, expected):
    pse = positive_subexpression(A2, (1, 2, 1), A2.element(v))
    assert pse.v_plus == expected
    assert is_positive_subexpression(pse, A2.element(v))


def test_all_A3_against_brute_force():
    elts = enumerate_elements(A3)
    for w in elts:
        for word in reduced_words(w)[:3]:
            for v in elts:
                if not bruhat_leq(v, w):
                    continue
                pse = positive_subexpression(A3, word, v)
                brute = brute_positive_subexpressions(word, to_permutation(v), 4)
                assert brute == [pse.v_plus]


def test_errors():
    with pytest.raises(NotReduced):
        positive_subexpression(A2, (1, 1), A2.identity())
    with pytest.raises(NotBelow):
        positive_subexpression(A2, (1, 2), A2.element((2, 1)))


def test_verifier_rejects_other_subexpressions():
    # s1 inside (1,2,1): {1} gives s1 too, but position 3 then goes down
    assert not is_positive_subexpression(PositiveSubexpression(A2, (1, 2, 1), (1,)))
    assert not is_positive_subexpression(PositiveSubexpression(A2, (1, 1), ()))


@given(st.lists(st.integers(1, 3), max_size=6), st.integers(0, 10 ** 6))
def test_pattern_and_params(word, seed):
    w = A3.element(word)
    elts = [v for v in enumerate_elements(A3) if bruhat_leq(v, w)]
    v = elts[seed % len(elts)]
    pse = positive_subexpression(A3, w.word, v)
    assert pse.n_params == len(w) - len(v)
    assert pse.pattern().count("s") == len(v)
    assert perm_of_word([pse.word[r - 1] for r in pse.v_plus], 4) == to_permutation(v)
    assert PositiveSubexpression.from_json(pse.to_json()) == pse
