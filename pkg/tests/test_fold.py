import random
from fractions import Fraction

import pytest

from tnncells.embed import certify_positive
from tnncells.fold import (FoldingData, check_expansion, expand_element, expand_subexpression,
                           expand_word, folded_cell_representative, is_tau_fixed,
                           standard_folding, tau)
from tnncells.pinning import evaluate_matrix, generator, random_positive_point
from tnncells.subexpr import NotReduced, is_positive_subexpression, positive_subexpression
from tnncells.weyl import CartanData, bruhat_leq, enumerate_elements, parse_cartan

C2, C3, B3 = parse_cartan("C2"), parse_cartan("C3"), parse_cartan("B3")


def test_standard_foldings():
    fd = standard_folding(C2)
    assert fd.dot_cartan == CartanData("A", 3) and fd.sigma == (3, 2, 1)
    assert fd.orbits == ((1, 3), (2,))
    assert fd.cartan == C2
    assert fd.folded_matrix() == [list(r) for r in C2.cartan_matrix]
    fb = standard_folding(B3)
    assert fb.dot_cartan == CartanData("D", 4) and fb.orbits == ((1,), (2,), (3, 4))
    assert fb.cartan == B3
    assert standard_folding("C3").cartan == C3
    with pytest.raises(ValueError):
        standard_folding("A3")


def test_json():
    fd = standard_folding(C2)
    assert fd.to_json() == {"dot_type": {"type": "A", "rank": 3}, "sigma": [3, 2, 1]}
    assert FoldingData.from_json(fd.to_json()) == fd


def test_validation():
    with pytest.raises(ValueError):
        FoldingData(CartanData("A", 3), (1, 1, 3))
    with pytest.raises(ValueError):
        FoldingData(CartanData("A", 3), (2, 1, 3))  # does not preserve the matrix
    with pytest.raises(ValueError):
        FoldingData(CartanData("A", 2), (2, 1))  # adjacent orbit


def test_expand_word():
    fd = standard_folding(C2)
    assert expand_word(fd, ()) == ()
    assert expand_word(fd, (1, 2, 1, 2)) == (1, 3, 2, 1, 3, 2)
    assert expand_element(fd, C2.longest()) == CartanData("A", 3).longest()
    assert expand_word(standard_folding(B3), (3,)) == (3, 4)
    with pytest.raises(NotReduced):
        expand_word(fd, (1, 1))


def test_expand_subexpression_examples():
    fd = standard_folding(C2)
    pse = positive_subexpression(C2, (1, 2, 1, 2), C2.s(1))
    exp = expand_subexpression(fd, pse)
    assert pse.v_plus == (3,)
    assert exp.v_plus == (4, 5)
    assert is_positive_subexpression(exp)
    w = C2.longest()
    full = expand_subexpression(fd, positive_subexpression(C2, w.word, w))
    assert full.v_plus == tuple(range(1, 7))
    assert expand_subexpression(fd, positive_subexpression(C2, w.word, C2.identity())).v_plus == ()


@pytest.mark.parametrize("name", ["C2", "C3", "B3"])
def test_expansion_exhaustive(name):
    cd = parse_cartan(name)
    fd = standard_folding(cd)
    elts = enumerate_elements(cd)
    assert all(check_expansion(fd, w, v) for w in elts for v in elts if bruhat_leq(v, w))


def test_certificates_C2():
    fd = standard_folding(C2)
    for w in enumerate_elements(C2):
        for v in enumerate_elements(C2):
            if bruhat_leq(v, w):
                pse = positive_subexpression(C2, w.word, v)
                g = folded_cell_representative(fd, pse)
                assert certify_positive(pse, matrix=g, w_word=pse.word).passed


def test_tau_fixed_points():
    fd = standard_folding(C2)
    rng = random.Random(9)
    for w in enumerate_elements(C2):
        for v in enumerate_elements(C2):
            if bruhat_leq(v, w):
                pse = positive_subexpression(C2, w.word, v)
                g = evaluate_matrix(folded_cell_representative(fd, pse),
                                    random_positive_point(pse.n_params, rng))
                assert is_tau_fixed(g)
    # negative control: a single y_1 is moved to y_3
    g = generator("y", 1, Fraction(2), 4)
    assert not is_tau_fixed(g)
    assert [list(r) for r in tau(g)] == [list(r) for r in generator("y", 3, Fraction(2), 4)]


def test_trivial_fold_and_non_type_a():
    with pytest.raises(Exception):
        folded_cell_representative(standard_folding(B3), positive_subexpression(B3, (3,), B3.identity()))
