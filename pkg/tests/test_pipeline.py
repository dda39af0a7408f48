import json
import random

import pytest

from unarypl.automata import EventuallyPeriodicSet as EPS
from unarypl.corpus import corpus
from unarypl.grammar import derivable_lengths, parse_grammar, to_cnf
from unarypl.pipeline import Config, oracle_compare, regularize, soundness_filter
from unarypl.pumping import (
    LanguageSource, PumpStep, PumpTuple, PumpingWitness, affine_witness, enumerate_family, table_witness,
)

from conftest import ODD, cnf

ODD_EPS = EPS(0, 2, frozenset(), frozenset({1}))


def grammar_source(text):
    return LanguageSource.from_grammar(parse_grammar(text))


class TestRegularize:
    def test_odd_lengths(self):
        res = regularize(grammar_source(ODD), Config(b_override=3))
        assert res.tuples == {PumpTuple(1, (2,))}
        assert res.regex == "a(aa)*"
        assert res.eps == ODD_EPS
        assert res.low_set == {1}
        assert res.verification.passed and res.verification.agreement_bound == 2000
        assert res.verification.stabilized

    def test_finite(self):
        res = regularize(grammar_source("S -> a"))
        assert res.verification.b == 2
        assert res.low_set == {1} and not res.tuples and res.regex == "a"

    def test_cofinite(self):
        res = regularize(grammar_source("S -> a a S | a a | a a a"))
        assert res.eps == EPS(2, 1, frozenset(), frozenset({0}))
        assert res.verification.passed and res.verification.agreement_bound == 2000

    def test_empty(self):
        res = regularize(grammar_source("S -> S"))
        assert res.eps.is_empty and res.regex == "∅" and res.verification.passed

    def test_epsilon_kept_in_low_set(self):
        res = regularize(grammar_source("S -> eps | a a S"))
        assert 0 in res.low_set and res.verification.passed
        assert all((n in res) == (n % 2 == 0) for n in range(200))

    def test_oracle_source_literal_default(self, odd_oracle):
        res = regularize(odd_oracle)
        assert res.verification.pi_mode == "literal"
        assert res.tuples == {PumpTuple(1, (2,))} and res.verification.passed

    def test_dfa_regex_semilinear_denote_eps(self):
        res = regularize(grammar_source("S -> A B | a\nA -> a a A | eps\nB -> a a a B | a"), Config(b_override=8))
        import re
        pat = re.compile(res.regex.replace("∅", "(?!)").replace("ε", ""))
        for n in range(300):
            want = n in res.eps
            assert res.dfa.accepts(n) == want
            assert (pat.fullmatch("a" * n) is not None) == want
            assert (n in res.semilinear) == want

    def test_json_is_stable(self):
        a = regularize(grammar_source(ODD), Config(b_override=3)).to_json()
        b = regularize(grammar_source(ODD), Config(b_override=3)).to_json()
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
        assert set(a["verification"]) >= {
            "agreement_bound", "mismatches", "tuples_kept", "tuples_discarded", "stabilized", "pi_mode", "b"
        }

    def test_config_validation(self):
        with pytest.raises(ValueError):
            Config(pi_mode="other")
        with pytest.raises(ValueError):
            regularize(grammar_source(ODD), Config(b_override=3, z_max=2))
        with pytest.raises(ValueError):
            regularize(grammar_source(ODD), Config(b_override=3, z_max=50, max_length=10))

    def test_small_max_clamps_zmax(self):
        res = regularize(grammar_source(ODD), Config(max_length=40))
        assert res.config.z_max == 40 and res.verification.agreement_bound == 40


def leaky_source():
    """Odd lengths plus 4; the split of 4 is legal but its progression leaves the set."""
    def pi(n):
        return PumpStep(1, 3) if n == 4 else PumpStep(n - 2, 2)
    witness = PumpingWitness(3, pi, "odd plus four")
    return LanguageSource.from_oracle(lambda n: n % 2 == 1 or n == 4, witness)


class TestSoundness:
    def test_filter_odd_family(self, odd_oracle):
        tuples = {PumpTuple(0, (3,)), PumpTuple(1, (2,)), PumpTuple(2, (1,))}
        assert soundness_filter(tuples, odd_oracle, 100) == {PumpTuple(1, (2,))}

    def test_filter_empty(self, odd_oracle):
        assert soundness_filter(set(), odd_oracle, 100) == frozenset()

    def test_filter_full_family(self):
        src = LanguageSource.from_oracle(lambda n: True, affine_witness(1, 1))
        fam = enumerate_family(1)
        assert soundness_filter(fam, src, 100) == fam

    def test_discard_reported(self):
        res = regularize(leaky_source())
        (d,) = res.verification.tuples_discarded
        assert d.tuple == PumpTuple(1, (3,)) and d.first_escape == 10
        assert not res.verification.passed and 4 in res.verification.mismatches

    def test_mismatch_surfaced_without_filter(self):
        res = regularize(leaky_source(), Config(filter_mode=False))
        assert not res.verification.passed
        assert 10 in res.verification.mismatches
        assert len(res.verification.mismatches) <= 20


class TestCompare:
    def test_self(self):
        src = grammar_source(ODD)
        res = regularize(src, Config(b_override=3))
        assert oracle_compare(res, src, 2000).agreement

    def test_constructed_disagreement(self):
        full = LanguageSource.from_oracle(lambda n: True, affine_witness(1, 1))
        cmp = oracle_compare(ODD_EPS, full, 100)
        assert cmp.mismatches[0] == 0 and 2 in cmp.mismatches and len(cmp.mismatches) == 20

    def test_both_empty(self):
        src = grammar_source("S -> S")
        assert oracle_compare(regularize(src), src, 500).agreement


@pytest.mark.parametrize("mode", ["lineage", "literal"])
@pytest.mark.parametrize("filter_mode", [True, False])
def test_corpus_soundness_and_completeness(mode, filter_mode):
    for g in corpus(seed=7, size=8, max_b=16):
        src = LanguageSource.from_grammar(g)
        res = regularize(src, Config(pi_mode=mode, filter_mode=filter_mode))
        lengths = src.lengths(res.config.max_length)
        assert {n for n in range(res.config.max_length + 1) if n in res} == lengths
        assert res.low_set == {n for n in lengths if n < res.verification.b}


def test_deterministic():
    g = corpus(seed=3, size=1, max_b=16)[0]
    runs = [regularize(LanguageSource.from_grammar(g)).to_json() for _ in range(2)]
    assert runs[0] == runs[1]


def test_table_witness_stops_at_zmax():
    table = {n: (n - 2, 2) for n in range(3, 16, 2)}
    src = LanguageSource.from_oracle(lambda n: n % 2 == 1, table_witness(3, table))
    res = regularize(src, Config(z_max=15))
    assert res.verification.passed and res.tuples == {PumpTuple(1, (2,))}
    assert not res.verification.stabilized
