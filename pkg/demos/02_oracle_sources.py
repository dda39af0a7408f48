"""Languages given only by a membership test and a pumping witness.

Not every language of interest has a grammar at hand.  An oracle source
pairs a membership predicate with a witness: the constant b and a rule
pi(l) = (p, q) for splitting long lengths.  Two examples follow: a
language that passes the bounded pumping check and is regularized, and
the perfect squares, which fail it for every small constant.
"""

from pathlib import Path

from unarypl import (
    Config,
    LanguageSource,
    affine_witness,
    check_pl1,
    load_witness,
    regularize,
    table_witness,
)

HERE = Path(__file__).parent

# Odd lengths with the witness read from a file: pi(l) = (l - 2, 2).
witness = load_witness(HERE / "data" / "odd_affine.txt")
odd = LanguageSource.from_oracle(lambda n: n % 2 == 1, witness, name="odd")
res = regularize(odd)
print(f"odd lengths via oracle: regex {res.regex}, pi mode {res.verification.pi_mode}, "
      f"verified={res.verification.passed}")

# Lengths that are 0 or 2 mod 5, from 7 on, plus a few short ones.  Its
# witness needs q = 5: stripping five letters keeps the residue class.
def member(n):
    return n in (0, 2, 5) or (n >= 7 and n % 5 in (0, 2))

mixed = LanguageSource.from_oracle(member, affine_witness(8, 5), name="mod 5")
print("\nPL1 with b=8 up to 400:", check_pl1(mixed, 8, 400).passed)
res = regularize(mixed)
print(f"regex: {res.regex}\ntuples kept: {sorted(map(str, res.tuples))}")

# A table witness covers an explicit range; beyond it the stabilization
# check cannot run, and the report says so instead of guessing.
table = {n: (n - 2, 2) for n in range(3, 16, 2)}
res = regularize(LanguageSource.from_oracle(lambda n: n % 2 == 1, table_witness(3, table)),
                 Config(z_max=15))
print(f"\ntable witness: regex {res.regex}, stabilized={res.verification.stabilized}")

# Perfect squares are not regular.  The bounded check finds the first
# length whose every admissible split pumps out of the language.
squares = LanguageSource.from_oracle(lambda n: int(n ** 0.5) ** 2 == n, affine_witness(1, 1))
for b in (1, 2, 4, 8):
    rep = check_pl1(squares, b, 400)
    ev = rep.evidence[0]
    print(f"squares, b={b}: fails at length {rep.failing_length}; e.g. split "
          f"({ev.p},{ev.q}) breaks at {ev.up if ev.up is not None else ev.down}")
