import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from unarypl.errors import BelowConstant, FrameAssertionError, NotInLanguage, WitnessSyntaxError, WitnessViolation
from unarypl.grammar import derivable_lengths, pumping_constant
from unarypl.pumping import (
    LanguageSource,
    PumpStep,
    PumpTuple,
    TupleTrace,
    affine_witness,
    check_pl1,
    collect_tuples,
    enumerate_family,
    family_size,
    grammar_witness,
    parse_witness,
    table_witness,
    trace_from_tuple,
    tuple_generate,
    tuple_normalize,
)

from conftest import ODD, cnf


def steps(trace):
    return [(s.p, s.q) for s in trace.steps]


class TestTupleGenerate:
    def test_hand_simulation(self, odd_oracle):
        trace = tuple_generate(odd_oracle, odd_oracle.witness, 9)
        assert steps(trace) == [(7, 2), (5, 2), (3, 2), (1, 2)]
        assert trace.h == 3
        tup = tuple_normalize(trace)
        assert tup.p_h + tup.multiplicities[0] * tup.qs[0] == 9 == 1 + 4 * 2

    def test_single_iteration(self, odd_oracle):
        trace = tuple_generate(odd_oracle, odd_oracle.witness, 3)
        assert steps(trace) == [(1, 2)] and trace.h == 0

    def test_below_constant(self, odd_oracle):
        with pytest.raises(BelowConstant):
            tuple_generate(odd_oracle, odd_oracle.witness, 2)

    def test_not_in_language(self, odd_oracle):
        with pytest.raises(NotInLanguage):
            tuple_generate(odd_oracle, odd_oracle.witness, 8)

    @pytest.mark.parametrize("entry", [(1, 4), (2, 2), (5, 0)])
    def test_witness_violation(self, entry):
        src = LanguageSource.from_oracle(lambda n: n % 2 == 1, table_witness(3, {5: entry}))
        with pytest.raises(WitnessViolation):
            tuple_generate(src, src.witness, 5)

    @pytest.mark.parametrize("later", [(6, 2), (3, 4)])
    def test_violation_mid_descent(self, later):
        src = LanguageSource.from_oracle(lambda n: True, table_witness(3, {9: (7, 2), 7: later}))
        with pytest.raises(WitnessViolation, match=r"pi\(7\)"):
            tuple_generate(src, src.witness, 9)

    def test_table_gap(self):
        src = LanguageSource.from_oracle(lambda n: n % 2 == 1, table_witness(3, {7: (5, 2)}))
        with pytest.raises(WitnessViolation, match="no entry"):
            tuple_generate(src, src.witness, 7)

    def test_trace_frame_checked_on_construction(self):
        with pytest.raises(FrameAssertionError):
            TupleTrace(9, (PumpStep(7, 2), PumpStep(4, 2)), 3)
        with pytest.raises(FrameAssertionError):
            TupleTrace(9, (PumpStep(7, 2),), 3)

    def test_grammar_lineage_odd(self, odd_cnf):
        src = LanguageSource.from_grammar(odd_cnf)
        w = grammar_witness(odd_cnf, 3)
        trace = tuple_generate(src, w, 9)
        assert tuple_normalize(trace) == PumpTuple(1, (2,))
        assert trace.steps[-1].p == 1


class TestNormalize:
    def test_groups_equal_q(self):
        trace = TupleTrace(12, (PumpStep(9, 3), PumpStep(7, 2), PumpStep(4, 3), PumpStep(2, 2)), 3)
        tup = tuple_normalize(trace)
        assert tup.qs == (2, 3) and tup.multiplicities == (2, 2) and tup.p_h == 2
        assert tup.k == 1 <= trace.h

    def test_distinct_gives_k_equal_h(self):
        trace = TupleTrace(6, (PumpStep(3, 3), PumpStep(1, 2)), 3)
        tup = tuple_normalize(trace)
        assert tup.k == trace.h == 1

    @settings(max_examples=200, deadline=None)
    @given(st.integers(1, 8), st.data())
    def test_conservation_and_idempotence(self, b, data):
        z = data.draw(st.integers(b, 80))
        table, n = {}, z
        while n >= b:
            q = data.draw(st.integers(1, b))
            table[n] = (n - q, q)
            n -= q
        src = LanguageSource.from_oracle(lambda _: True, table_witness(b, table))
        trace = tuple_generate(src, src.witness, z)
        tup = tuple_normalize(trace)
        assert tup.p_h + sum(i * q for i, q in zip(tup.multiplicities, tup.qs)) == z
        assert 0 <= tup.p_h < b and 0 <= tup.k < b
        assert all(0 < q <= b for q in tup.qs) and list(tup.qs) == sorted(set(tup.qs))
        assert all(i > 0 for i in tup.multiplicities)
        assert tuple_normalize(trace_from_tuple(tup, b)) == tup
        ps = [s.p for s in trace.steps]
        assert all(x > y for x, y in zip(ps, ps[1:]))


class TestTuple:
    def test_invalid(self):
        with pytest.raises(ValueError):
            PumpTuple(0, (2, 1))
        with pytest.raises(ValueError):
            PumpTuple(0, ())
        with pytest.raises(ValueError):
            PumpTuple(0, (0,))

    def test_identity_ignores_multiplicities(self):
        assert PumpTuple(1, (2,), (4,)) == PumpTuple(1, (2,))
        assert str(PumpTuple(0, (2, 3))) == "<0,(2,3)>"

    def test_members(self):
        assert PumpTuple(0, (2, 3)).members(12) == {5, 7, 8, 9, 10, 11, 12}


def brute_family(b):
    """Direct reading of the family constraints, independent of the library."""
    out = set()
    for p in range(b):
        for k in range(b):
            for qs in itertools.product(range(1, b + 1), repeat=k + 1):
                if len(set(qs)) == len(qs):
                    out.add((p, tuple(sorted(qs))))
    return out


class TestFamily:
    def test_b1(self):
        assert enumerate_family(1) == {PumpTuple(0, (1,))}

    def test_b2(self):
        fam = enumerate_family(2)
        assert len(fam) == 6
        assert {(t.p_h, t.qs) for t in fam} == {(p, qs) for p in (0, 1) for qs in ((1,), (2,), (1, 2))}

    def test_b3_contains_odd_candidates(self):
        fam = enumerate_family(3)
        assert {PumpTuple(0, (3,)), PumpTuple(1, (2,)), PumpTuple(2, (1,))} <= fam

    @pytest.mark.parametrize("b", range(1, 7))
    def test_cardinality(self, b):
        fam = enumerate_family(b)
        assert len(fam) == family_size(b) == b * (2 ** b - 1)
        assert {(t.p_h, t.qs) for t in fam} == brute_family(b)

    @pytest.mark.parametrize("text", [ODD, "S -> a a S | a a | a a a", "S -> S S | a a a | a a a a a", "S -> a S | a"])
    def test_collected_inside_family(self, text):
        c = cnf(text)
        src = LanguageSource.from_grammar(c)
        b = pumping_constant(c)
        for mode in ("lineage", "literal"):
            got = collect_tuples(src, grammar_witness(c, b, mode), 3 * b)
            assert got and all(t.fits(b) for t in got)
            if b <= 8:
                assert got <= enumerate_family(b)

    @pytest.mark.parametrize("b", range(1, 5))
    def test_fits_matches_family(self, b):
        fam = enumerate_family(b)
        candidates = {PumpTuple(p, qs) for p in range(b + 2)
                      for r in range(1, b + 2) for qs in itertools.combinations(range(1, b + 2), r)}
        assert {t for t in candidates if t.fits(b)} == fam


class TestPL1:
    def test_odd_b3_passes(self):
        src = LanguageSource.from_oracle(lambda n: n % 2 == 1, affine_witness(3, 2))
        assert check_pl1(src, 3, 500).passed

    def test_odd_b1_fails(self):
        src = LanguageSource.from_oracle(lambda n: n % 2 == 1, affine_witness(3, 2))
        rep = check_pl1(src, 1, 500)
        assert not rep.passed and rep.failing_length == 1
        (ev,) = rep.evidence
        assert (ev.p, ev.q, ev.up) == (0, 1, 2)
        assert json.loads(json.dumps(rep.to_json()))["failing_length"] == 1

    def test_full_language(self):
        src = LanguageSource.from_oracle(lambda n: True, affine_witness(1, 1))
        rep = check_pl1(src, 1, 100)
        assert rep.passed
        assert all(rep.witnesses[ell] == (ell - 1, 1) for ell in range(1, 101))

    def test_grammar_constant(self, odd_cnf):
        src = LanguageSource.from_grammar(odd_cnf)
        assert check_pl1(src, pumping_constant(odd_cnf), 2000).passed


class TestWitnessFile:
    def test_affine(self):
        w = parse_witness("b: 3\npi: affine q=2\n")
        assert w.b == 3 and w(9) == PumpStep(7, 2)

    def test_table(self):
        w = parse_witness("# table\nb: 3\npi 3 -> 1 2\npi 5 -> 3 2\n")
        assert w(5) == PumpStep(3, 2)

    def test_bad(self):
        with pytest.raises(WitnessSyntaxError):
            parse_witness("b: x")
        with pytest.raises(WitnessSyntaxError):
            parse_witness("pi: affine q=2")

    def test_grammar_witness_progression(self):
        c = cnf("S -> a a S | a a | a a a")
        lengths = derivable_lengths(c, 400)
        w = grammar_witness(c, mode="literal")
        for ell in range(w.b, 200):
            if ell in lengths:
                s = w(ell)
                assert all(n in lengths for n in range(s.p, 400, s.q))
