"""Regularize random grammars and compare against brute-force lengths.

Random unary grammars (at most 5 nonterminals, 10 rules, right-hand
sides of length 4) are regularized with default settings, and each
result is compared with the lengths the grammar derives up to 2000.
"""

import time

from unarypl import Config, LanguageSource, derivable_lengths, pumping_constant, regularize
from unarypl.corpus import corpus

grammars = corpus(seed=11, size=12, max_b=32, infinite=True)
print(f"{'#':>2} {'b':>3} {'tuples':>6} {'regex':<28} {'ok':<3} {'time':>6}")
for i, g in enumerate(grammars):
    source = LanguageSource.from_grammar(g)
    start = time.perf_counter()
    res = regularize(source, Config(max_length=2000))
    elapsed = time.perf_counter() - start
    oracle = derivable_lengths(source.grammar, 2000)
    ok = {n for n in range(2001) if n in res} == oracle
    print(f"{i:>2} {pumping_constant(source.grammar):>3} {len(res.tuples):>6} "
          f"{res.regex:<28} {'yes' if ok else 'NO':<3} {elapsed:>5.2f}s")
