"""Linear sets, and two independent routes to the same unary set.

A linear set is an offset plus all non-negative combinations of period
vectors.  In one dimension a tuple <p_h,(q_0..q_k)> is the linear set
with offset p_h + sum(q) and periods q_0..q_k.  Converting it through
the numerical-semigroup closure must give exactly what the NFA route
gives; the demo checks that for every tuple with b <= 4.
"""

from unarypl import (
    EventuallyPeriodicSet,
    LinearSet,
    PumpTuple,
    determinize,
    dfa_to_eps,
    enumerate_family,
    eps_to_semilinear,
    linear_member,
    linear_to_eps,
    minimize,
    tuple_to_linear,
    tuple_to_nfa,
)

ls = LinearSet.unary(0, (2, 3))
eps = linear_to_eps(ls)
print("0 + N*2 + N*3:", sorted(n for n in range(15) if n in eps), "... (1 is the Frobenius gap)")

plane = LinearSet((1, 1), ((1, 0), (0, 2)))
print("(4,5) in (1,1) + N(1,0) + N(0,2):", linear_member(plane, (4, 5)))
print("(4,4) in it:", linear_member(plane, (4, 4)))

t = PumpTuple(2, (1, 3))
print(f"\n{t} as a linear set: {tuple_to_linear(t)}")

agree = total = 0
for b in range(1, 5):
    for tup in enumerate_family(b):
        total += 1
        agree += dfa_to_eps(minimize(determinize(tuple_to_nfa(tup)))) == linear_to_eps(tuple_to_linear(tup))
print(f"NFA route and linear route agree on {agree} of {total} tuples (b <= 4)")

# Going back: an eventually periodic set becomes one linear set per short
# member and one per residue class of the cycle.
one_and_odd_from_5 = EventuallyPeriodicSet(5, 2, frozenset({1}), frozenset({0}))
print("\nsemilinear witness for {1} and odd >= 5:", eps_to_semilinear(one_and_odd_from_5).to_json())
