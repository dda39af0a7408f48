"""Tuple languages as automata, and the lasso shape of unary DFAs.

Each tuple <p_h,(q_0..q_k)> becomes a two-state NFA: one arc that reads
p_h + q_0 + ... + q_k letters and a loop of weight q_j for every j.
Unions of these are determinized into a lasso (a tail followed by a
cycle), minimized, and read off as an eventually periodic set.
"""

from unarypl import (
    EventuallyPeriodicSet,
    PumpTuple,
    UnaryDFA,
    determinize,
    dfa_to_eps,
    eps_add_finite,
    eps_restrict_min,
    eps_to_regex,
    minimize,
    nfa_lengths,
    nfa_union,
    tuple_to_nfa,
)

t1, t2 = PumpTuple(1, (2,)), PumpTuple(0, (2, 3))
for t in (t1, t2):
    nfa = tuple_to_nfa(t)
    print(f"{t}: arcs {nfa.transitions}, accepts {sorted(nfa_lengths(nfa, 14))} ...")

union = nfa_union([tuple_to_nfa(t1), tuple_to_nfa(PumpTuple(0, (2,)))])
dfa = determinize(union)
print("\nodd >= 3 union even >= 2, determinized:", dfa)
print("minimized:", minimize(dfa))

# Minimization shrinks the cycle to its least period and then the tail.
big = UnaryDFA(5, 4, frozenset({5, 7}))
print("\n", big, "->", minimize(big))

# Set operations happen on eventually periodic sets directly.
odd = EventuallyPeriodicSet(0, 2, frozenset(), frozenset({1}))
high = eps_restrict_min(odd, 3)
print("\nodd:", eps_to_regex(odd), "| restricted to >= 3:", eps_to_regex(high),
      "| with 1 put back:", eps_to_regex(eps_add_finite(high, {1})))
print("from a DFA:", dfa_to_eps(minimize(determinize(tuple_to_nfa(t2)))))
