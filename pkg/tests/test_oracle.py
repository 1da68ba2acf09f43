import pytest

from gomon.catalog import bs, free_product
from gomon.lcm import join
from gomon.oracle import (
    BallBounds,
    BudgetExceeded,
    brute_join,
    compare_join,
    enumerate_ball,
    gc_witness_search,
    in_PPinv,
    presentation_check,
    relations,
)
from gomon.words import normal_form, parse_word

B12 = bs(1, 2)


def ball_strings(g, bounds):
    return {str(x) for x in enumerate_ball(g, bounds)}


def test_bs12_ball():
    assert ball_strings(B12, BallBounds(2, 2)) == {
        "ε", "e:e", "e:e e:e", "e:e v:1", "e:e v:2", "e:e v:4",
        "v:1", "v:2", "v:3", "v:4"}


def test_free_product_ball():
    assert len(enumerate_ball(free_product(), BallBounds(2, 1))) == 7


def test_budget():
    with pytest.raises(BudgetExceeded) as exc:
        enumerate_ball(B12, BallBounds(4, 2, cap=10))
    assert not exc.value.ball.exhaustive


def test_relations_listed():
    assert len(relations(bs(2, -1))) == 1
    assert relations(free_product()) == []


def test_brute_join_agrees_on_bs12():
    ball = enumerate_ball(B12, BallBounds(4, 2))
    b = normal_form(B12, parse_word("v:1"))
    e = normal_form(B12, parse_word("e:e"))
    r = brute_join(b, e, ball)
    assert r.conclusive and str(r.result) == "e:e v:2"
    a = normal_form(free_product(), parse_word("a:1"))
    bb = normal_form(free_product(), parse_word("b:1"))
    assert not brute_join(a, bb, enumerate_ball(free_product(), BallBounds(3, 1))).conclusive


def test_compare_join_small():
    g = bs(2, 3)
    r = compare_join(g, enumerate_ball(g, BallBounds(2, 2)), enumerate_ball(g, BallBounds(4, 2)), join)
    assert r.pairs > 0 and r.checked > 0 and not r.mismatches


def test_presentation_check_detects_a_broken_engine():
    ball = enumerate_ball(B12, BallBounds(2, 2))
    assert presentation_check(B12, ball).ok
    # an engine that ignores edge letters breaks the relation b e = e b^2
    broken = lambda g, w: normal_form(g, tuple(x for x in w if not hasattr(x, "name")))
    assert presentation_check(B12, ball, engine=broken).relation_failures


def test_in_PPinv():
    g = bs(2, 3)
    assert in_PPinv(g, parse_word("e:e v:1 e:e^-1", allow_inverse=True))
    assert in_PPinv(g, parse_word("v:-1 e:e", allow_inverse=True))
    assert not in_PPinv(g, parse_word("e:e^-1 v:1 e:e", allow_inverse=True))


def test_gc_witness_search():
    g = bs(2, 3)
    ball = enumerate_ball(g, BallBounds(3, 2))
    r = gc_witness_search(g, parse_word("v:2"), ball)
    assert not r.all_pass and str(r.witness) == "e:e e:e"
    assert gc_witness_search(B12, parse_word("v:1"), enumerate_ball(B12, BallBounds(3, 2))).all_pass
