import pytest
from conftest import GRAPHS, words
from hypothesis import given, settings
from hypothesis import strategies as st

from gomon.catalog import bs, free_product, three_vertex_tree
from gomon.omega import (
    BInfinity,
    Finite,
    GroupElement,
    InvalidCharacter,
    OreInfinity,
    Periodic,
    UnsupportedGraphShape,
    act,
    b_unbounded,
    chi_eval,
    classify_character,
    format_character,
    in_omega_max,
    is_maximal_by_definition,
    parse_character,
    same_character,
)
from gomon.oracle import BallBounds, enumerate_ball
from gomon.words import ParseError, parse_word

B12 = bs(1, 2)


def chi(g, text):
    return parse_character(text, g)


def w(text):
    return parse_word(text)


@pytest.mark.parametrize("text", ["finite: v:1 e:e", "periodic: v:1 | e:e v:2", "binf: v", "oreinf"])
def test_character_roundtrip(text):
    c = parse_character(text)
    assert parse_character(format_character(c)) == c


@pytest.mark.parametrize("text", ["periodic: v:1", "periodic: v:1 |", "weird: x", "binf: w"])
def test_character_parse_errors(text):
    with pytest.raises(ParseError):
        parse_character(text, B12)


def test_period_is_primitive():
    assert Periodic((), w("e:e e:e")).period == w("e:e")
    with pytest.raises(InvalidCharacter):
        Periodic((), ())


def test_chi_eval():
    assert chi_eval(B12, BInfinity("v"), w("v:5")) == 1
    assert chi_eval(B12, chi(B12, "periodic: | e:e"), w("v:1")) == 0
    assert chi_eval(B12, chi(B12, "periodic: | e:e"), w("e:e e:e")) == 1
    assert chi_eval(B12, chi(B12, "periodic: | e:e"), w("e:e e:e v:3")) == 0
    assert chi_eval(B12, chi(B12, "finite: e:e v:2"), w("v:1")) == 1
    assert chi_eval(B12, chi(B12, "finite: e:e v:1"), w("v:1")) == 0


def test_ore_point():
    g = bs(2, 3)
    assert chi_eval(g, OreInfinity(), w("v:7")) == 1
    assert chi_eval(g, OreInfinity(), w("e:e")) == 0
    with pytest.raises(InvalidCharacter):
        chi_eval(free_product(), OreInfinity(), w("a:1"))


def test_act():
    e = GroupElement(w("e:e"))
    assert format_character(act(B12, e, BInfinity("v"))) == "periodic: e:e | v:1"
    assert act(B12, GroupElement((), w("v:1")), chi(B12, "periodic: | e:e")) is None
    assert act(B12, GroupElement(w("v:2")), BInfinity("v")) == BInfinity("v")
    assert act(B12, GroupElement(()), Finite(w("v:1"))) == Finite(w("v:1"))
    back = act(B12, GroupElement((), w("e:e")), chi(B12, "periodic: e:e | v:1"))
    assert back == BInfinity("v")


def test_group_element_normalized():
    ge = GroupElement(w("e:e v:3"), w("v:1")).normalized(B12)
    assert ge == GroupElement(w("e:e v:2"), ())


@pytest.mark.parametrize("g,text,expected", [
    (bs(1, 2), "periodic: | e:e", False),
    (bs(1, 2), "binf: v", False),
    (bs(1, 2), "periodic: | e:e v:1", False),
    (bs(2, 1), "periodic: | e:e", False),
    (bs(2, 1), "periodic: | e:e v:1", True),
    (bs(2, -1), "periodic: | e:e", True),
    (bs(2, 3), "finite: e:e", False),
])
def test_omega_max_against_the_oracle(g, text, expected):
    c = chi(g, text)
    assert in_omega_max(g, c) is expected
    assert is_maximal_by_definition(g, c, 3).consistent is expected


def test_b_unbounded_carry():
    g = bs(2, 1)
    assert not b_unbounded(g, w("e:e"))
    assert b_unbounded(g, w("e:e v:1"))


def test_flags():
    f = classify_character(B12, chi(B12, "periodic: | e:e"))
    assert f.in_Omega_infty and f.in_Omega_A_inf and not f.in_Omega_max
    f = classify_character(B12, BInfinity("v"))
    assert f.in_Omega_b_inf and not f.in_Omega_A_inf
    t = three_vertex_tree()
    f = classify_character(t, chi(t, "periodic: | e:f"))
    assert f.in_Omega_max is None
    with pytest.raises(UnsupportedGraphShape):
        in_omega_max(t, chi(t, "periodic: | e:f"))


# -- scan bound ---------------------------------------------------------------------

@pytest.mark.parametrize("g,text,p,expected", [
    # b^3 has to be paid for by e-letters, each doubling: six periods at least
    (B12, "periodic: e:e | v:1", "v:3", 1),
    # the deficit at u crosses a 2~3 tree edge and gets rounded up before f doubles it
    (three_vertex_tree(), "periodic: e:f | v:1", "u:1", 1),
    # an A- edge turns the prefix's own b-power into a deficit
    (bs(2, -1), "periodic: v:10 e:e | v:1", "e:e", 1),
])
def test_scan_bound_regressions(g, text, p, expected):
    c = chi(g, text)
    assert chi_eval(g, c, w(p)) == expected == chi_eval(g, c, w(p), scale=8)


@st.composite
def graph_char_and_p(draw):
    name = draw(st.sampled_from(sorted(GRAPHS)))
    g = GRAPHS[name]
    period = draw(words(g, max_len=3, max_exponent=3).filter(bool))
    return g, Periodic(draw(words(g, max_len=3, max_exponent=3)), period), draw(words(g, max_len=4))


@settings(max_examples=300, deadline=None)
@given(graph_char_and_p())
def test_chi_eval_stable_under_longer_scans(data):
    g, c, p = data
    assert chi_eval(g, c, p) == chi_eval(g, c, p, scale=4)


@settings(max_examples=200, deadline=None)
@given(graph_char_and_p(), st.data())
def test_action_identity_and_inverse(data, more):
    g, c, _ = data
    h = GroupElement(more.draw(words(g, max_len=2)), more.draw(words(g, max_len=2)))
    assert act(g, GroupElement(()), c) is not None
    hc = act(g, h, c)
    if hc is not None:
        back = act(g, GroupElement(h.q, h.p), hc)
        assert back is not None
        assert same_character(g, back, c, enumerate_ball(g, BallBounds(2, 2)))
