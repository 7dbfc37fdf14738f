import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from genus2lf.words import (
    RELATOR,
    SurfaceWord,
    WordLengthError,
    abelianize,
    are_conjugate,
    concat_reduce,
    conjugacy_witness,
    cyclic_reduce,
    dehn_reduce,
    free_reduce,
    invert,
    is_dehn_reduced,
    parse_letters,
    render_letters,
    same_curve,
    words_equal,
)

letters = st.sampled_from((1, -1, 2, -2, 3, -3, 4, -4))
words = st.lists(letters, max_size=30).map(tuple)


def test_relator_and_rotations_reduce_to_empty():
    for k in range(8):
        r = RELATOR[k:] + RELATOR[:k]
        assert dehn_reduce(r) == ()
        assert dehn_reduce(invert(r)) == ()


def test_free_reduce():
    assert free_reduce((1, -1, 2, 3, -3, -2, 4)) == (4,)
    assert free_reduce(()) == ()


def test_parse_render_round_trip():
    w = parse_letters("a1 b1' a2 b2'")
    assert w == (1, -2, 3, -4)
    assert render_letters(w) == "a1 b1' a2 b2'"
    assert parse_letters("e") == ()
    with pytest.raises(ValueError):
        parse_letters("a3")


def test_commutator_of_a1_a2_is_nontrivial():
    # abelianizes to zero, so only a real solution of the word problem sees it
    w = (1, 3, -1, -3)
    assert abelianize(w) == (0, 0, 0, 0)
    assert dehn_reduce(w) != ()
    assert oracles.detects_nontrivial(w)


def test_length_cap():
    with pytest.raises(WordLengthError):
        dehn_reduce((1,) * 50, max_length=10)


def test_surface_word_is_reduced():
    assert SurfaceWord(RELATOR + (1,)).letters == (1,)


@settings(max_examples=1000)
@given(words)
def test_dehn_reduce_is_idempotent_and_reduced(w):
    r = dehn_reduce(w)
    assert is_dehn_reduced(r)
    assert dehn_reduce(r) == r
    assert len(r) <= len(free_reduce(w))
    assert abelianize(r) == abelianize(w)


@settings(max_examples=1000)
@given(st.lists(words, max_size=5))
def test_concat_reduce_matches_dehn_reduce(parts):
    parts = [dehn_reduce(p) for p in parts]
    joined = tuple(x for p in parts for x in p)
    assert concat_reduce(parts) == dehn_reduce(joined)


@settings(max_examples=1000)
@given(st.integers(0, 10**9), words)
def test_word_problem_against_oracles(seed, w):
    rng = random.Random(seed)
    noisy = oracles.insert_trivial(rng, w, pieces=rng.randrange(1, 4))
    # built to be equal
    assert words_equal(noisy, w)
    # nontriviality certified by a finite quotient
    if oracles.detects_nontrivial(w):
        assert dehn_reduce(w) != ()
    if dehn_reduce(w) == ():
        assert not oracles.detects_nontrivial(w)


def test_oracle_decides_most_words():
    rng = random.Random(3)
    decided = 0
    for _ in range(300):
        w = oracles.random_word(rng, 12)
        if dehn_reduce(w) == () or oracles.detects_nontrivial(w):
            decided += 1
    assert decided >= 290


@settings(max_examples=1000)
@given(st.integers(0, 10**9), st.lists(letters, min_size=1, max_size=14).map(tuple), st.lists(letters, max_size=10).map(tuple))
def test_conjugacy_witness_on_built_conjugates(seed, u, c):
    rng = random.Random(seed)
    v = oracles.insert_trivial(rng, c + u + invert(c), pieces=1)
    w = conjugacy_witness(u, v)
    assert w is not None
    assert words_equal(tuple(w) + u + invert(w), v)


@settings(max_examples=1000)
@given(st.lists(letters, max_size=8).map(tuple), st.lists(letters, max_size=8).map(tuple))
def test_conjugacy_against_quotients_and_brute_force(u, v):
    w = conjugacy_witness(u, v)
    if w is not None:
        assert words_equal(tuple(w) + u + invert(w), v)
        assert not oracles.separates_classes(u, v)
    elif oracles.brute_conjugator(u, v, dehn_reduce, max_len=1) is not None:
        pytest.fail("brute force found a conjugator the solver missed")


def test_conjugacy_is_not_fooled_by_abelianization():
    u, v = (1, 2), (2, 1)
    assert are_conjugate(u, v)
    assert not are_conjugate((1, 3), (3, -1))
    assert same_curve((1,), (-1,))
    assert not are_conjugate((1,), (-1,))


@settings(max_examples=1000)
@given(words)
def test_cyclic_reduce_is_a_conjugate(w):
    c, r = cyclic_reduce(w)
    # r = c w c^-1
    assert words_equal(r, tuple(c) + w + invert(c))
    assert not r or r[0] != -r[-1]
