import pytest
from hypothesis import given, settings, strategies as st

from unarypl.automata import EventuallyPeriodicSet as EPS, determinize, dfa_to_eps, minimize, tuple_to_nfa
from unarypl.errors import DimensionMismatch
from unarypl.pumping import PumpTuple, enumerate_family
from unarypl.semilinear import (
    LinearSet,
    SemilinearSet,
    eps_to_semilinear,
    linear_member,
    linear_to_eps,
    semilinear_member,
    semilinear_union,
    tuple_to_linear,
)

from strategies import eps_sets


def brute_linear(offset, periods, bound):
    reach = {offset} if offset <= bound else set()
    frontier = list(reach)
    while frontier:
        x = frontier.pop()
        for p in periods:
            y = x + p
            if p and y <= bound and y not in reach:
                reach.add(y)
                frontier.append(y)
    return reach


class TestMember:
    def test_examples(self):
        ls = LinearSet.unary(3, (2,))
        assert linear_member(ls, 9)
        assert not linear_member(ls, 4)

    def test_two_dimensions(self):
        ls = LinearSet((1, 1), ((1, 0), (0, 2)))
        assert linear_member(ls, (4, 5))
        assert not linear_member(ls, (4, 4))
        assert (1, 1) in ls

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            linear_member(LinearSet.unary(3, (2,)), (1, 2))
        with pytest.raises(DimensionMismatch):
            LinearSet((1, 1), ((1,),))
        with pytest.raises(DimensionMismatch):
            semilinear_union([LinearSet.unary(1), LinearSet((1, 1))])

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 20), st.lists(st.integers(1, 12), max_size=3))
    def test_zero_periods_ignored(self, offset, periods):
        a = LinearSet.unary(offset, periods)
        b = LinearSet.unary(offset, periods + [0, 0])
        assert all(linear_member(a, v) == linear_member(b, v) for v in range(200))

    def test_zero_period_two_dimensions(self):
        a = LinearSet((0, 1), ((2, 1),))
        b = LinearSet((0, 1), ((2, 1), (0, 0)))
        for x in range(8):
            for y in range(8):
                assert linear_member(a, (x, y)) == linear_member(b, (x, y))


class TestTupleToLinear:
    def test_examples(self):
        assert tuple_to_linear(PumpTuple(1, (2,))) == LinearSet.unary(3, (2,))
        assert tuple_to_linear(PumpTuple(0, (1,))) == LinearSet.unary(1, (1,))
        assert tuple_to_linear(PumpTuple(2, (1, 3))) == LinearSet.unary(6, (1, 3))


class TestLinearToEps:
    def test_frobenius_gap(self):
        e = linear_to_eps(LinearSet.unary(0, (2, 3)))
        assert {n for n in range(101) if n in e} == {0} | set(range(2, 101))

    def test_odd(self):
        assert linear_to_eps(LinearSet.unary(3, (2,))) == EPS(3, 2, frozenset(), frozenset({0}))

    def test_singleton(self):
        assert linear_to_eps(LinearSet.unary(5)) == EPS.finite({5})

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 30), st.lists(st.integers(0, 15), max_size=4))
    def test_against_closure(self, offset, periods):
        e = linear_to_eps(LinearSet.unary(offset, periods))
        ls = LinearSet.unary(offset, periods)
        expected = brute_linear(offset, periods, 2000)
        assert {n for n in range(2001) if n in e} == expected
        assert all(linear_member(ls, n) == (n in expected) for n in range(0, 2001, 7))

    def test_two_dimensions_rejected(self):
        with pytest.raises(DimensionMismatch):
            linear_to_eps(LinearSet((1, 1)))


class TestSemilinear:
    def test_odd(self):
        odd = EPS(0, 2, frozenset(), frozenset({1}))
        assert eps_to_semilinear(odd).components == (LinearSet.unary(1, (2,)),)

    def test_low_plus_cycle(self):
        e = EPS(3, 2, frozenset({1}), frozenset({0}))
        ss = eps_to_semilinear(e)
        assert all(semilinear_member(ss, n) == (n in e) for n in range(101))

    def test_empty(self):
        assert not semilinear_member(SemilinearSet(), 3)

    def test_union_concatenates(self):
        u = semilinear_union([LinearSet.unary(1), SemilinearSet((LinearSet.unary(4, (3,)),))])
        assert [semilinear_member(u, n) for n in range(8)] == [False, True, False, False, True, False, False, True]

    @settings(max_examples=100, deadline=None)
    @given(eps_sets())
    def test_round_trip(self, e):
        ss = eps_to_semilinear(e)
        assert all(semilinear_member(ss, n) == (n in e) for n in range(2001))


@pytest.mark.parametrize("b", [1, 2, 3, 4])
def test_cross_route(b):
    for tup in sorted(enumerate_family(b)):
        nfa_route = dfa_to_eps(minimize(determinize(tuple_to_nfa(tup))))
        linear_route = linear_to_eps(tuple_to_linear(tup))
        assert nfa_route == linear_route, tup
