import pytest
from hypothesis import given, strategies as st

from flexigraph.errors import ResourceCapExceeded
from flexigraph.words import (FreeWord, abelianize, ball_size, enumerate_ball, evaluate,
                              free_reduce, parse_word, reduce)

letters3 = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=12)


def test_reduction_examples():
    assert reduce([1, -1], 3).is_identity()
    assert reduce([1, 2, -2, 3], 3).letters == (1, 3)
    assert reduce([-1, -1], 3).letters == (-1, -1)


def test_reduce_rejects_out_of_range():
    with pytest.raises(ValueError):
        reduce([4], 3)


@pytest.mark.parametrize("k,L,n", [(3, 1, 7), (3, 2, 37), (2, 2, 17), (3, 3, 187), (3, 5, 4687)])
def test_ball_size(k, L, n):
    assert ball_size(k, L) == n
    assert sum(1 for _ in enumerate_ball(k, L)) == n


def test_ball_cap():
    with pytest.raises(ResourceCapExceeded):
        list(enumerate_ball(3, 5, max_count=100))


def test_ball_words_distinct_and_reduced():
    ws = list(enumerate_ball(3, 3))
    assert len(set(ws)) == len(ws)
    assert all(free_reduce(w.letters) == w.letters for w in ws)
    assert [len(w) for w in ws] == sorted(len(w) for w in ws)


def test_abelianize_examples():
    assert abelianize(reduce([-2, 3, -2], 3)) == (0, -2, 1)
    assert abelianize(FreeWord.identity(3)) == (0, 0, 0)
    assert abelianize(FreeWord.gen(1, 3, 3)) == (3, 0, 0)


def test_evaluate_examples():
    assert evaluate(FreeWord.gen(2, 3, 3), (0, 1, 1)) == 3
    assert evaluate(FreeWord.gen(1, 3, 5), (0, 1, 1)) == 0
    assert evaluate(FreeWord((2, -3) * 3, 3), (0, 1, 1)) == 0


def test_text_roundtrip():
    w = parse_word("x1*x2^-1*x3^2", 3)
    assert w.letters == (1, -2, 3, 3)
    assert parse_word(w.to_text(), 3) == w
    assert FreeWord.identity(3).to_text() == "1"


@given(letters3, letters3)
def test_group_laws(a, b):
    u, v = reduce(a, 3), reduce(b, 3)
    assert (u * u.inverse()).is_identity()
    assert (u * v).inverse() == v.inverse() * u.inverse()
    assert free_reduce((u * v).letters) == (u * v).letters


@given(letters3, letters3)
def test_abelianize_is_homomorphism(a, b):
    u, v = reduce(a, 3), reduce(b, 3)
    assert abelianize(u * v) == tuple(x + y for x, y in zip(abelianize(u), abelianize(v)))


@given(letters3)
def test_syllables_roundtrip(a):
    w = reduce(a, 3)
    assert FreeWord.from_syllables(w.syllables(), 3) == w
    assert parse_word(w.to_text(), 3) == w
