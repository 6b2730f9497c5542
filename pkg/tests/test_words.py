import random

from hypothesis import given, strategies as st

from artifact.notation import GeneratorWord, word
from artifact.words import concat, conjugate, invert, power, reduce, rotate

from strategies import generator_words

W = lambda text, g=4: word(text, g)  # noqa: E731


def test_reduce_examples():
    assert len(reduce(W("11'"))) == 0
    assert reduce(W("211'3")) == W("23")
    w = W("21321y1'2'3'1'2'y'")
    assert reduce(w) == w


def test_reduce_cascades():
    assert len(reduce(W("12yy'2'1'"))) == 0


def test_invert_examples():
    assert invert(W("12y")) == W("y'2'1'")
    assert invert(W("id")) == W("id")
    assert invert(W("y'")) == W("y")


def test_conjugate_by_empty():
    w = W("12y")
    assert conjugate(w, W("id")) == w
    assert conjugate(W("2"), W("1")) == W("121'")


def test_rotate_is_conjugation_by_prefix():
    w = W("123y")
    assert rotate(w, 1) == W("23y1")
    assert reduce(rotate(w, 1)) == conjugate(w, invert(W("1")))


def test_power():
    assert power(W("12"), 2) == W("1212")
    assert power(W("12"), -1) == W("2'1'")
    assert len(power(W("12"), 0)) == 0


def test_concat_rejects_mixed_genus():
    import pytest
    with pytest.raises(ValueError):
        concat(W("1", 3), W("1", 4))


def _random_order_reduce(w: GeneratorWord, rng: random.Random) -> GeneratorWord:
    letters = list(w.letters)
    while True:
        spots = [i for i in range(len(letters) - 1) if letters[i + 1] == letters[i].inverse()]
        if not spots:
            return GeneratorWord(w.genus, tuple(letters))
        i = rng.choice(spots)
        del letters[i:i + 2]


@given(st.integers(2, 5).flatmap(lambda g: generator_words(g, 14)), st.integers(0, 2**32))
def test_reduce_is_confluent(w, seed):
    assert _random_order_reduce(w, random.Random(seed)) == reduce(w)


@given(st.integers(2, 5).flatmap(lambda g: st.tuples(generator_words(g), generator_words(g))))
def test_reduce_length_bound(pair):
    u, v = pair
    assert len(reduce(concat(u, v))) <= len(u) + len(v)


@given(st.integers(2, 5).flatmap(generator_words))
def test_invert_is_involution(w):
    assert invert(invert(w)) == w
    assert len(reduce(concat(w, invert(w)))) == 0
