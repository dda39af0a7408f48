"""Hypothesis strategies shared by the automata and semilinear tests."""

from hypothesis import strategies as st

from unarypl.automata import EventuallyPeriodicSet, UnaryDFA, UnaryNFA


@st.composite
def nfas(draw, max_states=6, max_weight=5):
    n = draw(st.integers(1, max_states))
    states = range(n)
    edges = draw(st.lists(
        st.tuples(st.sampled_from(states), st.integers(0, max_weight), st.sampled_from(states)),
        max_size=3 * n,
    ))
    # Weight-0 edges only go forward, so no zero-weight cycle can form.
    edges = [(s, w, d) for s, w, d in edges if w > 0 or s < d]
    initials = draw(st.sets(st.sampled_from(states), min_size=1))
    finals = draw(st.sets(st.sampled_from(states)))
    return UnaryNFA(frozenset(states), tuple(edges), frozenset(initials), frozenset(finals))


@st.composite
def dfas(draw, max_tail=8, max_cycle=8):
    tail = draw(st.integers(0, max_tail))
    cycle = draw(st.integers(1, max_cycle))
    accepting = draw(st.sets(st.integers(0, tail + cycle - 1)))
    return UnaryDFA(tail, cycle, frozenset(accepting))


@st.composite
def eps_sets(draw, max_threshold=10, max_period=8):
    t = draw(st.integers(0, max_threshold))
    p = draw(st.integers(1, max_period))
    low = draw(st.sets(st.integers(0, t - 1))) if t else set()
    cyc = draw(st.sets(st.integers(0, p - 1)))
    return EventuallyPeriodicSet(t, p, frozenset(low), frozenset(cyc))


def unroll(dfa: UnaryDFA, k: int) -> UnaryDFA:
    """An equivalent, non-minimal lasso: cycle repeated k times, tail grown by one lap."""
    acc = {n for n in range(dfa.tail + dfa.cycle * (k + 1)) if dfa.accepts(n)}
    return UnaryDFA(dfa.tail + dfa.cycle, dfa.cycle * k, frozenset(acc))
