from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from diagdom.lex import NEG_INF, LexTuple, lex_compare


def test_longer_list_wins_on_equal_prefix():
    assert lex_compare(LexTuple((1, 2)), LexTuple((1, 2, 0))) == -1
    assert LexTuple((1, 2)) < LexTuple((1, 2, 0))


def test_first_position_decides():
    assert lex_compare(LexTuple((3,)), LexTuple((2, 9))) == 1


def test_reflexive_equal():
    a = LexTuple((1, Fraction(1, 2), (2, 3)))
    assert lex_compare(a, a) == 0
    assert a == LexTuple((1, Fraction(1, 2), (2, 3)))


def test_neg_inf_below_everything():
    assert lex_compare(NEG_INF, -10**100) == -1
    assert lex_compare(NEG_INF, NEG_INF) == 0


def test_nested_tuples_pad():
    assert LexTuple(((1, 2),)) < LexTuple(((1, 2, 5),))
    assert LexTuple(((2,),)) > LexTuple(((1, 9),))


def test_mixed_kinds_rejected():
    with pytest.raises(TypeError):
        lex_compare(LexTuple((1,)), LexTuple(((1, 2),)))


@given(st.lists(st.integers(-5, 5), max_size=4), st.lists(st.integers(-5, 5), max_size=4),
       st.lists(st.integers(-5, 5), max_size=4))
def test_total_order_on_uniform_tuples(a, b, c):
    ta, tb, tc = LexTuple(a), LexTuple(b), LexTuple(c)
    # antisymmetry
    assert lex_compare(ta, tb) == -lex_compare(tb, ta)
    # transitivity
    if lex_compare(ta, tb) <= 0 and lex_compare(tb, tc) <= 0:
        assert lex_compare(ta, tc) <= 0


def test_exhaustive_total_order_small():
    tuples = [LexTuple(t) for n in range(3) for t in product((0, 1, 2), repeat=n)]
    for a in tuples:
        for b in tuples:
            assert lex_compare(a, b) == -lex_compare(b, a)
            for c in tuples:
                if lex_compare(a, b) <= 0 and lex_compare(b, c) <= 0:
                    assert lex_compare(a, c) <= 0
