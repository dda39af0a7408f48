"""End-to-end regularization of a unary language that satisfies the pumping lemma.

The language is split at the pumping constant ``b``: lengths below ``b``
form a finite set found by scanning, and lengths ``>= b`` are covered by
the languages of the tuples that the descent produces.  The tuple
languages are combined as NFAs, determinized, minimized and cut back to
lengths ``>= b``; then the short lengths are put back.  Every result is
compared with the source's own membership up to a verification bound.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace

from . import _bits
from .automata import (
    EventuallyPeriodicSet,
    UnaryDFA,
    determinize,
    dfa_to_eps,
    eps_add_finite,
    eps_restrict_min,
    eps_to_dfa,
    eps_to_regex,
    eps_to_regex_json,
    minimize,
    nfa_union,
    tuple_to_nfa,
)
from .errors import WitnessViolation
from .grammar import is_finite
from .pumping import (
    LINEAGE,
    LITERAL,
    PI_MODES,
    LanguageSource,
    PumpTuple,
    PumpingWitness,
    grammar_witness,
    iter_traces,
    tuple_normalize,
)
from .semilinear import SemilinearSet, eps_to_semilinear

log = logging.getLogger(__name__)

MISMATCH_CAP = 20


@dataclass(frozen=True)
class Config:
    """Bounds and modes for :func:`regularize`; ``None`` means the default.

    Defaults: ``z_max = b*(b+2)``, ``max_length = max(2000, 4*z_max)``,
    lineage decomposition for grammars, literal for oracle witnesses, and
    the soundness filter on.
    """

    z_max: int | None = None
    max_length: int | None = None
    b_override: int | None = None
    pi_mode: str | None = None
    filter_mode: bool = True

    def __post_init__(self):
        if self.pi_mode is not None and self.pi_mode not in PI_MODES:
            raise ValueError(f"pi_mode must be one of {PI_MODES}")
        if self.b_override is not None and self.b_override < 1:
            raise ValueError("b must be positive")

    def resolve(self, b: int, source: LanguageSource) -> "Config":
        z_max = self.z_max if self.z_max is not None else b * (b + 2)
        if self.z_max is None and self.max_length is not None:
            z_max = max(b, min(z_max, self.max_length))
        bound = self.max_length if self.max_length is not None else max(2000, 4 * z_max)
        if z_max < b:
            raise ValueError(f"z_max={z_max} is below b={b}")
        if bound < z_max:
            raise ValueError(f"verification bound {bound} is below z_max={z_max}")
        mode = self.pi_mode or (LINEAGE if source.is_grammar else LITERAL)
        return replace(self, z_max=z_max, max_length=bound, b_override=b, pi_mode=mode)


@dataclass(frozen=True)
class DiscardedTuple:
    tuple: PumpTuple
    first_escape: int


@dataclass(frozen=True)
class VerificationReport:
    agreement_bound: int
    mismatches: tuple[int, ...]
    tuples_kept: tuple[PumpTuple, ...]
    tuples_discarded: tuple[DiscardedTuple, ...]
    tuples_certified: tuple[PumpTuple, ...]
    stabilized: bool
    pi_mode: str
    b: int

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "agreement_bound": self.agreement_bound,
            "mismatches": list(self.mismatches),
            "tuples_kept": [tuple_json(t) for t in self.tuples_kept],
            "tuples_discarded": [
                {**tuple_json(d.tuple), "first_escape": d.first_escape}
                for d in self.tuples_discarded
            ],
            "tuples_certified": [tuple_json(t) for t in self.tuples_certified],
            "stabilized": self.stabilized,
            "pi_mode": self.pi_mode,
            "b": self.b,
        }


def tuple_json(t: PumpTuple) -> dict:
    return {"p_h": t.p_h, "qs": list(t.qs)}


@dataclass(frozen=True)
class RegularizationResult:
    low_set: frozenset[int]
    tuples: frozenset[PumpTuple]
    eps: EventuallyPeriodicSet
    dfa: UnaryDFA
    regex: str
    semilinear: SemilinearSet
    verification: VerificationReport
    config: Config = field(compare=False)

    def __contains__(self, n: int) -> bool:
        return n in self.eps

    def to_json(self) -> dict:
        return {
            "b": self.verification.b,
            "low_set": sorted(self.low_set),
            "tuples": [tuple_json(t) for t in sorted(self.tuples)],
            "eps": self.eps.to_json(),
            "dfa": self.dfa.to_json(),
            "regex": eps_to_regex_json(self.eps),
            "semilinear": self.semilinear.to_json(),
            "verification": self.verification.to_json(),
        }


def _witness_for(source: LanguageSource, b: int | None, mode: str | None) -> PumpingWitness:
    if source.is_grammar and source.witness is None:
        return grammar_witness(source.grammar, b, mode or LINEAGE)
    witness = source.witness
    if b is not None and b != witness.b:
        witness = replace(witness, b=b)
    return witness


def escaping_length(tup: PumpTuple, source_mask: int, b: int, bound: int) -> int | None:
    """Least ``n`` in ``[b, bound]`` in the tuple's language but not the source's."""
    escape = tup.mask(bound) >> b << b & ~source_mask
    if not escape:
        return None
    return (escape & -escape).bit_length() - 1


def soundness_filter(tuples, source: LanguageSource, bound: int,
                     b: int | None = None) -> frozenset[PumpTuple]:
    """Keep the tuples whose language on ``[b, bound]`` stays inside the source."""
    kept, _ = _filter(tuples, source, bound, b if b is not None else source.default_b())
    return kept


def _filter(tuples, source, bound, b):
    if bound < b:
        raise ValueError("verification bound must be at least b")
    mask = source.mask(bound)
    kept, discarded = set(), []
    for t in sorted(tuples):
        esc = escaping_length(t, mask, b, bound)
        if esc is None:
            kept.add(t)
        else:
            discarded.append(DiscardedTuple(t, esc))
    return frozenset(kept), tuple(discarded)


def _collect(source, witness, z_max, z_min=None):
    """Canonical tuples plus those reached by a trace with distinct q's.

    A lineage trace with distinct q's has exactly the tuple's language as
    its set of re-insertions, so such tuples are contained in the language.
    """
    tuples, certified = set(), set()
    for trace in iter_traces(source, witness, z_max, z_min):
        t = tuple_normalize(trace)
        tuples.add(t.canonical())
        if max(t.multiplicities) == 1:
            certified.add(t.canonical())
    return frozenset(tuples), frozenset(certified)


def _union_eps(tuples) -> EventuallyPeriodicSet:
    if not tuples:
        return EventuallyPeriodicSet.empty()
    nfa = nfa_union([tuple_to_nfa(t) for t in sorted(tuples)])
    return dfa_to_eps(minimize(determinize(nfa)))


def _compare(eps: EventuallyPeriodicSet, source_mask: int, bound: int) -> tuple[int, ...]:
    mismatches = []
    for n in range(bound + 1):
        if (n in eps) != bool(source_mask >> n & 1):
            mismatches.append(n)
            if len(mismatches) >= MISMATCH_CAP:
                break
    return tuple(mismatches)


def regularize(source: LanguageSource, config: Config | None = None) -> RegularizationResult:
    """Build the finite-automaton description of the source language."""
    config = config or Config()
    b = config.b_override or source.default_b()
    cfg = config.resolve(b, source)
    witness = _witness_for(source, cfg.b_override, cfg.pi_mode)
    bound = cfg.max_length
    source_mask = source.mask(bound)
    low_set = _bits.to_set(source_mask & ((1 << b) - 1))

    finite = source.is_grammar and is_finite(source.grammar) and not source_mask >> b
    if finite:
        collected = certified = frozenset()
        grown = frozenset()
    else:
        collected, certified = _collect(source, witness, cfg.z_max)
        try:
            extra, _ = _collect(source, witness, cfg.z_max + b, cfg.z_max + 1)
            grown = collected | extra
        except WitnessViolation as exc:
            # A table witness need only cover [b, z_max]; beyond it the check cannot run.
            log.warning("stabilization check skipped: %s", exc)
            grown = None
    if cfg.filter_mode:
        kept, discarded = _filter(collected, source, bound, b)
    else:
        kept, discarded = collected, ()
    log.debug("b=%d: %d tuples collected, %d kept", b, len(collected), len(kept))

    eps = eps_add_finite(eps_restrict_min(_union_eps(kept), b), low_set)
    mismatches = _compare(eps, source_mask, bound)
    report = VerificationReport(
        agreement_bound=bound,
        mismatches=mismatches,
        tuples_kept=tuple(sorted(kept)),
        tuples_discarded=discarded,
        tuples_certified=tuple(sorted(kept & certified)) if cfg.pi_mode == LINEAGE else (),
        stabilized=grown == collected,
        pi_mode=cfg.pi_mode,
        b=b,
    )
    if mismatches:
        log.warning("result disagrees with the source at %s", list(mismatches))
    return RegularizationResult(
        low_set=low_set,
        tuples=kept,
        eps=eps,
        dfa=eps_to_dfa(eps),
        regex=eps_to_regex(eps),
        semilinear=eps_to_semilinear(eps),
        verification=report,
        config=cfg,
    )


@dataclass(frozen=True)
class Comparison:
    bound: int
    mismatches: tuple[int, ...]

    @property
    def agreement(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {"bound": self.bound, "agreement": self.agreement, "mismatches": list(self.mismatches)}


def oracle_compare(result, source: LanguageSource, bound: int) -> Comparison:
    """Pointwise comparison on ``[0, bound]``; at most 20 mismatches are listed.

    ``result`` may be a :class:`RegularizationResult` or anything with a
    membership test (an eventually periodic set, a DFA).
    """
    if isinstance(result, RegularizationResult):
        eps = result.eps
    elif isinstance(result, UnaryDFA):
        eps = dfa_to_eps(result)
    else:
        eps = result
    return Comparison(bound, _compare(eps, source.mask(bound), bound))
