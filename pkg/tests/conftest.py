import random

import pytest

from unarypl.grammar import parse_grammar, to_cnf
from unarypl.pumping import LanguageSource, affine_witness

ODD = "S -> a S a | a"


def cnf(text):
    return to_cnf(parse_grammar(text))


def brute_lengths(text, bound):
    """Lengths derivable by breadth-first expansion of sentential forms.

    Independent of the CNF pipeline: works on the grammar as written and
    prunes forms whose terminal count already exceeds the bound.
    """
    g = parse_grammar(text)
    rules = {}
    for lhs, rhs in g.productions:
        rules.setdefault(lhs, []).append(rhs)
    seen, found = set(), set()
    frontier = [(g.start,)]
    while frontier:
        form = frontier.pop()
        if form in seen:
            continue
        seen.add(form)
        terminals = sum(1 for s in form if s == "a")
        if terminals > bound or len(form) > 2 * bound + 4:
            continue
        idx = next((i for i, s in enumerate(form) if s != "a"), None)
        if idx is None:
            found.add(terminals)
            continue
        for rhs in rules.get(form[idx], []):
            frontier.append(form[:idx] + rhs + form[idx + 1:])
    return found


@pytest.fixture
def odd_cnf():
    return cnf(ODD)


@pytest.fixture
def odd_oracle():
    return LanguageSource.from_oracle(lambda n: n % 2 == 1, affine_witness(3, 2), name="odd")


@pytest.fixture
def rng():
    return random.Random(20261016)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
