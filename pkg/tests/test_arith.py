from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from gomon.arith import (
    NonCyclicInput,
    RationalSubgroup,
    TRIVIAL,
    floor_div,
    index_data,
    intersect,
    rational_lcm,
    strip_primes,
    valuation,
)

cyc = RationalSubgroup.cyclic
small_q = st.builds(F, st.integers(1, 60), st.integers(1, 12))
primes = st.sets(st.sampled_from([2, 3, 5]), max_size=2)
subgroups = st.builds(lambda b, ps: RationalSubgroup(b, frozenset(ps)), small_q, primes)


def test_valuation_and_strip():
    assert valuation(48, 2) == 4
    assert strip_primes(F(12, 5), {2}) == F(3, 5)


def test_rational_lcm():
    assert rational_lcm(F(2, 3), F(3, 4)) == 6


def test_dense_base_is_normalized():
    assert RationalSubgroup.dense(12, (2,)) == RationalSubgroup.dense(3, (2,))
    assert str(RationalSubgroup.dense(12, (2,))) == "3*Z[1/2]"


def test_intersections():
    assert intersect(cyc(2), cyc(3)) == cyc(6)
    assert intersect(RationalSubgroup.dense(3, (2,)), cyc(F(1, 4))) == cyc(F(3, 4))
    assert intersect(cyc(1), TRIVIAL).is_trivial


def test_index_data():
    assert index_data(cyc(2), cyc(3)) == (2, 3)
    with pytest.raises(NonCyclicInput):
        index_data(RationalSubgroup.dense(1, (2,)), cyc(1))


def test_floor_div():
    assert floor_div(F(7, 2), F(1)) == 3
    assert floor_div(F(-1, 2), F(1)) == -1


@given(subgroups, subgroups, small_q)
def test_intersection_membership(H1, H2, q):
    H = intersect(H1, H2)
    assert H == intersect(H2, H1)
    assert (q in H) == (q in H1 and q in H2)


@given(subgroups, st.integers(-20, 20))
def test_base_multiples_are_members(H, n):
    assert n * H.base in H
