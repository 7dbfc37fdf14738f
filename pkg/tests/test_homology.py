from math import prod

from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from genus2lf.homology import (
    BASE_CLASSES,
    IDENTITY,
    AbelianGroupShape,
    h1_of_total_space,
    homology_of_mcg_word,
    is_symplectic,
    matmul,
    pairing,
    smith_diagonal,
    transvection,
    twist_action,
)
from genus2lf.mcg import Curve
from genus2lf.homology import class_of_curve, is_separating

vecs = st.tuples(*[st.integers(-6, 6)] * 4)


def test_base_classes():
    assert BASE_CLASSES[1] == (0, 1, 0, 0)
    assert BASE_CLASSES[3] == (0, 1, 0, 1)
    assert BASE_CLASSES[6] == (0, 0, 0, 0)
    assert pairing((1, 0, 0, 0), (0, 1, 0, 0)) == 1


@settings(max_examples=1000)
@given(vecs)
def test_transvections_are_symplectic_and_mutually_inverse(c):
    t, u = transvection(c), twist_action(c)
    assert is_symplectic(t) and is_symplectic(u)
    assert matmul(t, u) == IDENTITY


@settings(max_examples=1000)
@given(st.lists(st.sampled_from((1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6)), max_size=15))
def test_word_matrices_are_symplectic(w):
    assert is_symplectic(homology_of_mcg_word(w))


def test_separating_twist_acts_trivially():
    assert homology_of_mcg_word((6,)) == IDENTITY
    assert is_separating(Curve((1, 2), 6))
    assert not is_separating(Curve((), 3))
    assert class_of_curve(Curve((), 3)) == (0, 1, 0, 1)


def test_smith_examples():
    assert smith_diagonal([(2, 4), (6, 8)]) == [2, 4]
    assert smith_diagonal([(0, 0)]) == []
    assert str(h1_of_total_space([])) == "Z^4"
    assert str(h1_of_total_space([(2, 0, 0, 0), (0, 3, 0, 0)])) == "Z^2 + Z/6"
    assert h1_of_total_space([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]).trivial


def test_shape_rendering():
    assert str(AbelianGroupShape(2)) == "Z^2"
    assert str(AbelianGroupShape(0)) == "0"
    assert str(AbelianGroupShape(0, (2,))) == "Z/2"


@settings(max_examples=1000)
@given(st.lists(vecs, max_size=6))
def test_smith_against_rank_oracle(rows):
    g = h1_of_total_space(rows)
    q_rank = oracles.rank_mod(rows) if rows else 0
    assert g.rank == 4 - q_rank
    for p in (2, 3, 5, 7):
        p_rank = oracles.rank_mod(rows, p) if rows else 0
        assert 4 - p_rank == g.rank + sum(1 for d in g.torsion if d % p == 0)
    assert prod(g.torsion) == oracles.torsion_order(rows)
