"""The odd-length language from grammar to automaton, one step at a time.

S -> a S a | a generates a, aaa, aaaaa, ...  With pumping constant 3 the
descent strips two letters at a time until fewer than three remain, so
every long word is summarized by the tuple <1,(2)>: start from one letter
and add two any positive number of times.  The demo walks through each
intermediate object the pipeline builds.
"""

from pathlib import Path

from unarypl import (
    Config,
    LanguageSource,
    PumpTuple,
    derivable_lengths,
    enumerate_family,
    grammar_witness,
    load_grammar,
    parse_tree,
    pump_decompose,
    regularize,
    soundness_filter,
    to_cnf,
    tuple_generate,
    tuple_normalize,
)

HERE = Path(__file__).parent

grammar = load_grammar(HERE / "data" / "odd.cfg")
cnf = to_cnf(grammar)
print("grammar:\n" + str(grammar))
print("\nChomsky normal form:\n" + str(cnf.as_grammar()))
print("\nlengths up to 15:", sorted(derivable_lengths(cnf, 15)))

tree = parse_tree(cnf, 5)
print(f"\nparse tree of a^5: depth {tree.depth()}, {sum(1 for _ in tree.nodes())} nodes")
step = pump_decompose(cnf, 5, b=3)
print(f"one pumping split of 5: p={step.p}, q={step.q}  (so {step.p}, {step.p + step.q}, "
      f"{step.p + 2 * step.q}, ... are all lengths)")

# The descent: split, keep the residual, split again while it is >= b.
source = LanguageSource.from_grammar(grammar)
witness = grammar_witness(source.grammar, b=3)
trace = tuple_generate(source, witness, 11)
print("\ndescent from 11:", " -> ".join(f"({s.p},{s.q})" for s in trace.steps))
tup = tuple_normalize(trace)
print(f"normalized: {tup} with multiplicities {tup.multiplicities}")

# Of the 21 tuples possible for b = 3, only <1,(2)> stays inside the language.
family = enumerate_family(3)
candidates = {PumpTuple(0, (3,)), PumpTuple(1, (2,)), PumpTuple(2, (1,))}
print(f"\nfamily for b=3 has {len(family)} tuples")
kept = soundness_filter(candidates, source, 100, b=3)
print("of <0,(3)>, <1,(2)>, <2,(1)> the filter keeps:", sorted(map(str, kept)))

result = regularize(source, Config(b_override=3))
print("\nregex:", result.regex)
print("minimal DFA:", result.dfa)
print("verified on [0, %d]: %s" % (result.verification.agreement_bound, result.verification.passed))
