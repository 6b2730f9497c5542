import pytest
from hypothesis import given, strategies as st

from artifact.notation import (GenLetter, GeneratorWord, Kind, NotationError, Power, expand, parse,
                               to_text, word)

from strategies import generator_words


def texts(w):
    return [str(x) for x in w]


def test_power_expands_repeated():
    assert texts(word("(12)^3", 3)) == ["1", "2"] * 3


def test_id_is_empty():
    assert len(word("id", 4)) == 0
    assert to_text(word("id", 4)) == "id"


def test_word_with_inverted_tail():
    w = word("21321y1'2'3'1'2'y'", 4)
    assert texts(w) == ["2", "1", "3", "2", "1", "y", "1'", "2'", "3'", "1'", "2'", "y'"]
    assert [x.sign for x in w] == [1] * 6 + [-1] * 6


def test_cube_of_123():
    assert texts(word("(123)^2", 4)) == ["1", "2", "3", "1", "2", "3"]


def test_zero_and_negative_exponents():
    assert len(word("(1)^0", 3)) == 0
    assert texts(word("(12)^-1", 3)) == ["2'", "1'"]


def test_whitespace_is_insignificant():
    assert word(" 1 2\ty' ", 3) == word("12y'", 3)


def test_nested_groups():
    assert texts(word("((1)^2 y)^2", 3)) == ["1", "1", "y", "1", "1", "y"]


@pytest.mark.parametrize("text, genus", [
    ("x", 3), ("0", 3), ("3", 3), ("b", 3), ("(12", 3), ("12)", 3), ("(12)", 3),
    ("(12)^", 3), ("", 3), ("   ", 3), ("1", 1), ("1̅", 3),
])
def test_rejects_malformed(text, genus):
    with pytest.raises(NotationError):
        word(text, genus)


def test_error_carries_offset():
    with pytest.raises(NotationError) as exc:
        word("12x", 3)
    assert exc.value.offset == 2


def test_b_admitted_from_genus_four():
    assert texts(word("b'", 4)) == ["b'"]


def test_exponent_needs_space_before_digit():
    assert texts(word("(y22)^2 1", 3)) == ["y", "2", "2", "y", "2", "2", "1"]
    assert len(word("(1)^21", 3)) == 21


def test_generator_word_rejects_inadmissible():
    with pytest.raises(NotationError):
        GeneratorWord(3, (GenLetter(Kind.BETA),))
    with pytest.raises(NotationError):
        GeneratorWord(3, (GenLetter(Kind.TWIST, 3),))


def test_parse_tree_keeps_power():
    e = parse("(12)^3", 3)
    assert isinstance(e.items[0], Power) and e.items[0].exponent == 3
    assert to_text(e) == "(12)^3"


@given(st.integers(2, 5).flatmap(generator_words))
def test_print_parse_round_trip(w):
    assert word(to_text(w), w.genus) == w


@given(st.integers(2, 5).flatmap(lambda g: st.tuples(st.just(g), generator_words(g, 4), st.integers(-3, 3))))
def test_power_law(args):
    g, w, n = args
    text = f"({to_text(w)})^{n}" if len(w) else "id"
    got = word(text, g)
    if not len(w):
        assert len(got) == 0
    elif n >= 0:
        assert got.letters == w.letters * n
    else:
        inv = tuple(x.inverse() for x in reversed(w.letters))
        assert got.letters == inv * -n


@given(st.integers(2, 5).flatmap(generator_words))
def test_expansion_is_admissible(w):
    assert all(x.admissible(w.genus) for x in expand(parse(to_text(w), w.genus), w.genus))
