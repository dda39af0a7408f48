"""Random unary grammars for property tests, acceptance runs and demos."""

from __future__ import annotations

import random

from .grammar import TERMINAL, UnaryGrammar, is_finite, pumping_constant, to_cnf
from .errors import EmptyLanguage


def random_grammar(rng: random.Random, max_nonterminals: int = 5, max_productions: int = 10,
                   max_rhs: int = 4) -> UnaryGrammar:
    """A grammar with at most the given numbers of nonterminals and rules.

    Every nonterminal gets at least one rule; right-hand sides mix ``a``
    with nonterminals and may be empty.
    """
    n = rng.randint(1, max_nonterminals)
    names = ["S"] + [chr(ord("B") + i) for i in range(n - 1)]
    count = rng.randint(n, max(n, max_productions))
    lhs = names + [rng.choice(names) for _ in range(count - n)]
    prods = []
    for left in lhs:
        size = rng.randint(0, max_rhs)
        rhs = tuple(TERMINAL if rng.random() < 0.5 else rng.choice(names) for _ in range(size))
        prods.append((left, rhs))
    prods.sort(key=lambda p: names.index(p[0]))
    return UnaryGrammar(tuple(names), "S", tuple(prods))


def corpus(seed: int, size: int, max_b: int | None = 32, infinite: bool = False,
           **limits) -> list[UnaryGrammar]:
    """``size`` random grammars with a non-empty language and, when
    ``max_b`` is set, a CNF pumping constant of at most ``max_b``.

    Most small random grammars generate finite languages; ``infinite=True``
    keeps only the ones that exercise the pumping machinery.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < size:
        g = random_grammar(rng, **limits)
        try:
            cnf = to_cnf(g)
        except EmptyLanguage:
            continue
        if max_b is not None and pumping_constant(cnf) > max_b:
            continue
        if infinite and is_finite(cnf):
            continue
        out.append(g)
    return out
