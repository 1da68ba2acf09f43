import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from gomon.catalog import bs, free_product, three_vertex_tree
from gomon.oracle import random_rewrite
from gomon.words import (
    ELetter,
    NotInP,
    ParseError,
    VLetter,
    equal,
    format_word,
    group_inverse,
    identity,
    in_P,
    in_PT,
    inverse_word,
    is_properly_reduced,
    multiply,
    normal_form,
    parse_word,
    positive_solution,
    reduce,
)

from conftest import GRAPHS, words

B12, B23 = bs(1, 2), bs(2, 3)


def nf(g, text):
    return normal_form(g, parse_word(text, g, allow_inverse=True))


def test_parse_and_format():
    w = parse_word("v:3/2 e:e e:e^-1 v:-1", allow_inverse=True)
    assert w == (VLetter("v", F(3, 2)), ELetter("e"), ELetter("e", True), VLetter("v", F(-1)))
    assert format_word(w) == "v:3/2 e:e e:e^-1 v:-1"
    assert parse_word("ε") == ()


@pytest.mark.parametrize("text", ["v", "v:x", "e:e^-1", "v:-1", ":3"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_word(text)


def test_parse_checks_graph():
    with pytest.raises(ParseError):
        parse_word("w:1", B12)
    with pytest.raises(ParseError):
        parse_word("v:1/2", B12)
    with pytest.raises(ParseError):
        parse_word("e:f", B12)


def test_defining_relations():
    assert nf(B12, "v:1 e:e") == nf(B12, "e:e v:2")
    assert nf(B23, "v:2 e:e") == nf(B23, "e:e v:3")
    assert nf(bs(2, -1), "v:2 e:e v:1") == nf(bs(2, -1), "e:e")
    t = three_vertex_tree()
    assert nf(t, "u:2") == nf(t, "v:3")
    assert nf(t, "v:1 e:f") == nf(t, "e:f v:2")
    assert nf(free_product(), "a:1 b:1") != nf(free_product(), "b:1 a:1")


def test_normal_form_strings():
    assert str(nf(B23, "v:2 e:e")) == "e:e v:3"
    assert str(nf(B23, "v:1 e:e")) == "v:1 e:e"
    assert str(nf(B12, "v:1 e:e v:-2 e:e^-1")) == "ε"


def test_membership():
    assert in_P(B23, nf(B23, "e:e v:3"))
    assert not in_P(B23, nf(B23, "e:e^-1"))
    assert in_PT(B23, nf(B23, "v:5"))
    assert not in_PT(B23, nf(B23, "e:e"))
    assert positive_solution(B23, nf(B23, "v:1 e:e v:-3")) is None


def test_reduce_is_properly_reduced():
    w = reduce(B23, parse_word("v:2 e:e"))
    assert is_properly_reduced(B23, w)
    assert normal_form(B23, w) == nf(B23, "v:2 e:e")


@pytest.mark.parametrize("name", sorted(GRAPHS))
def test_group_axioms(name):
    g = GRAPHS[name]

    @settings(max_examples=40, deadline=None)
    @given(words(g, 4, 3, True), words(g, 4, 3, True), words(g, 4, 3, True))
    def check(a, b, c):
        assert normal_form(g, a + inverse_word(a)) == identity(g)
        assert multiply(g, multiply(g, a, b), c) == multiply(g, a, multiply(g, b, c))
        assert multiply(g, a, group_inverse(g, a)).is_identity
        assert equal(g, a + b, normal_form(g, a + b).letters())

    check()


@pytest.mark.parametrize("name", sorted(GRAPHS))
def test_positive_words(name):
    g = GRAPHS[name]

    @settings(max_examples=40, deadline=None)
    @given(words(g, 5, 4), st.integers(0, 2**32))
    def check(w, seed):
        x = normal_form(g, w)
        assert in_P(g, x)
        r = reduce(g, w)
        assert normal_form(g, r) == x
        assert is_properly_reduced(g, r)
        if w:
            assert not x.is_identity
            assert not in_P(g, normal_form(g, inverse_word(w)))
        rng = random.Random(seed)
        v = w
        for _ in range(5):
            v = random_rewrite(g, v, rng)
        assert normal_form(g, v) == x

    check()


def test_not_in_p_from_positive_letters():
    from gomon.lcm import positive_letters
    with pytest.raises(NotInP):
        positive_letters(B23, parse_word("e:e^-1", allow_inverse=True))
