from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from gomon.catalog import amalgam, bs, free_product, three_vertex_tree
from gomon.lcm import EMPTY, divides, join, join_T, p_inv_e, precedes
from gomon.words import VLetter, multiply, normal_form, parse_word

from conftest import GRAPHS, words

B12, B23 = bs(1, 2), bs(2, 3)


def w(g, text):
    return parse_word(text, g)


def test_join_examples():
    assert str(join(B12, w(B12, "v:1"), w(B12, "e:e"))) == "e:e v:2"
    assert str(join(B23, w(B23, "v:1"), w(B23, "e:e"))) == "e:e v:3"
    assert join(free_product(), w(free_product(), "a:1"), w(free_product(), "b:1")) is EMPTY
    am = amalgam(2, 3)
    assert str(join(am, w(am, "a:1"), w(am, "b:1"))) == "a:2"
    t = three_vertex_tree()
    assert join(t, w(t, "w:1"), w(t, "v:1")) is EMPTY
    assert str(join(t, w(t, "u:1"), w(t, "v:1"))) == "u:2"


def test_distinct_edge_letters_have_no_common_multiple():
    g = bs(1, 2)
    from gomon.catalog import one_vertex
    g = one_vertex([("e", 1, 2), ("f", 1, 3)])
    assert join(g, w(g, "e:e"), w(g, "e:f")) is EMPTY


def test_divides():
    assert divides(B12, w(B12, "v:1"), w(B12, "e:e")) is EMPTY
    y = divides(B12, w(B12, "v:1"), w(B12, "e:e v:2"))
    assert str(y) == "e:e"
    assert precedes(B23, w(B23, "v:2"), w(B23, "e:e v:3"))


def test_p_inv_e():
    q, z = p_inv_e(B23, w(B23, "v:1"), "e")
    assert z == 2 and q == normal_form(B23, w(B23, "v:1"))
    q, z = p_inv_e(B23, w(B23, "v:2"), "e")
    assert z == 2 and q.is_identity
    assert p_inv_e(B23, w(B23, "e:e"), "e") is EMPTY


def test_join_T_lists():
    am = amalgam(2, 3)
    # a:3 = b:3 a:1 is already a multiple of b:1
    assert str(join_T(am, [VLetter("a", F(3))], [VLetter("b", F(1))])) == "a:3"
    assert str(join_T(am, [VLetter("a", F(1))], [VLetter("b", F(2))])) == "a:2"


@pytest.mark.parametrize("name", sorted(GRAPHS))
def test_join_is_a_symmetric_common_multiple(name):
    g = GRAPHS[name]

    @settings(max_examples=40, deadline=None)
    @given(words(g, 3, 3), words(g, 3, 3), words(g, 2, 2))
    def check(p, q, x):
        j = join(g, p, q)
        jq = join(g, q, p)
        assert (j is EMPTY) == (jq is EMPTY)
        if j is not EMPTY:
            assert j == jq
            assert precedes(g, p, j) and precedes(g, q, j)
        px = multiply(g, p, x)
        assert join(g, p, px) == px
        assert join(g, p, p) == normal_form(g, p)

    check()
