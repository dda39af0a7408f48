"""Pumping witnesses, the tuple generation loop and the finite tuple family.

A *witness* fixes the pumping constant ``b`` and a decomposition function
``pi`` sending each language length ``l >= b`` to ``(p, q)`` with
``l = p + q`` and ``0 < q <= b``.  Repeatedly applying ``pi`` to the
residual ``p`` until it drops below ``b`` gives a trace; grouping equal
``q`` values turns the trace into a :class:`PumpTuple`
``<p_h; q_0 < ... < q_k>`` whose language is
``{p_h + i_0 q_0 + ... + i_k q_k : every i_j > 0}``.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from . import _bits
from .errors import (
    BelowConstant,
    EmptyLanguage,
    FrameAssertionError,
    NotInLanguage,
    WitnessSyntaxError,
    WitnessViolation,
)
from .grammar import CnfGrammar, PumpStep, UnaryGrammar, bank, pumping_constant, to_cnf

LINEAGE = "lineage"
LITERAL = "literal"
PI_MODES = (LINEAGE, LITERAL)


@dataclass(frozen=True)
class PumpingWitness:
    """A pumping constant ``b`` with a decomposition function ``pi``.

    ``session(z)`` returns the function used for one run of
    :func:`tuple_generate` starting at length ``z``.  The base class hands
    out ``pi`` itself; grammar witnesses in lineage mode carry the residual
    parse tree from one call to the next.
    """

    b: int
    pi: Callable[[int], PumpStep]
    description: str = field(default="", compare=False)

    def __post_init__(self):
        if self.b < 1:
            raise ValueError("pumping constant must be positive")

    def session(self, z: int) -> Callable[[int], PumpStep]:
        return self.pi

    def __call__(self, length: int) -> PumpStep:
        return self.pi(length)


def affine_witness(b: int, q: int) -> PumpingWitness:
    """``pi(l) = (l - q, q)`` for every ``l``."""
    if not 0 < q <= b:
        raise WitnessViolation(f"affine step q={q} is outside (0, {b}]")

    def pi(length):
        return PumpStep(length - q, q)

    return PumpingWitness(b, pi, f"affine q={q}")


def table_witness(b: int, table: dict[int, tuple[int, int]]) -> PumpingWitness:
    table = dict(table)

    def pi(length):
        if length not in table:
            raise WitnessViolation(f"decomposition table has no entry for length {length}")
        p, q = table[length]
        return PumpStep(p, q)

    return PumpingWitness(b, pi, f"table of {len(table)} entries")


@dataclass(frozen=True)
class LineageWitness(PumpingWitness):
    """Grammar witness whose successive steps cut the same parse tree.

    The first call of a session parses ``a^z``; every later call works on
    the residual tree left by the previous excision, so all excised
    segments can be put back independently.  ``pi`` (used outside
    sessions) re-parses each length from scratch.
    """

    grammar: CnfGrammar | None = field(default=None, compare=False)

    def session(self, z: int) -> Callable[[int], PumpStep]:
        bk = bank(self.grammar)
        b = self.b
        state = {"root": None}

        def pi(length):
            with bk.lock:
                root = state["root"]
                if root is None:
                    root = bk.canon(bk.start, length)
                elif bk.size[root] != length:
                    raise WitnessViolation(
                        f"lineage session expected length {bk.size[root]}, got {length}"
                    )
                q, state["root"] = bk.pump(root, b)
            return PumpStep(length - q, q)

        return pi


def grammar_witness(g: CnfGrammar, b: int | None = None, mode: str = LINEAGE) -> PumpingWitness:
    """Witness derived from parse-tree surgery on ``g``."""
    if mode not in PI_MODES:
        raise ValueError(f"unknown pi mode {mode!r}")
    if b is None:
        b = pumping_constant(g)
    bk = bank(g)

    def pi(length):
        with bk.lock:
            if length <= 0 or not bk.derives(bk.start, length):
                raise NotInLanguage(length)
            q, _ = bk.pump(bk.canon(bk.start, length), b)
        return PumpStep(length - q, q)

    if mode == LITERAL:
        return PumpingWitness(b, pi, "grammar, literal")
    return LineageWitness(b, pi, "grammar, lineage", grammar=g)


_AFFINE = re.compile(r"^pi\s*:\s*affine\s+q\s*=\s*(\d+)$")
_ENTRY = re.compile(r"^pi\s+(\d+)\s*->\s*(\d+)\s+(\d+)$")
_B = re.compile(r"^b\s*:\s*(\d+)$")


def parse_witness(text: str) -> PumpingWitness:
    """Read the witness text format.

    ::

        b: 3
        pi: affine q=2

    or a table, one ``pi <l> -> <p> <q>`` line per length.
    """
    b = None
    affine = None
    table: dict[int, tuple[int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if m := _B.match(line):
            if b is not None:
                raise WitnessSyntaxError("duplicate 'b:' line", lineno)
            b = int(m.group(1))
        elif m := _AFFINE.match(line):
            affine = int(m.group(1))
        elif m := _ENTRY.match(line):
            ell, p, q = map(int, m.groups())
            if ell in table:
                raise WitnessSyntaxError(f"duplicate entry for length {ell}", lineno)
            table[ell] = (p, q)
        else:
            raise WitnessSyntaxError(f"cannot parse {line!r}", lineno)
    if b is None or b < 1:
        raise WitnessSyntaxError("missing or non-positive 'b:' line")
    if affine is not None and table:
        raise WitnessSyntaxError("give either an affine pi or a table, not both")
    if affine is not None:
        return affine_witness(b, affine)
    if not table:
        raise WitnessSyntaxError("no pi given")
    return table_witness(b, table)


def load_witness(path) -> PumpingWitness:
    with open(path, encoding="utf-8") as fh:
        return parse_witness(fh.read())


@dataclass(frozen=True)
class LanguageSource:
    """Where membership answers come from.

    Either a CNF grammar (membership by CYK over lengths, witness derived
    from parse trees) or an arbitrary predicate on lengths, which must come
    with a user-supplied witness.
    """

    contains: Callable[[int], bool] = field(compare=False)
    grammar: CnfGrammar | None = None
    witness: PumpingWitness | None = field(default=None, compare=False)
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.grammar is None and self.witness is None:
            raise ValueError("an oracle-backed source needs a pumping witness")

    @classmethod
    def from_grammar(cls, g: UnaryGrammar | CnfGrammar, name: str = "") -> "LanguageSource":
        if isinstance(g, UnaryGrammar):
            try:
                g = to_cnf(g)
            except EmptyLanguage:
                g = CnfGrammar((g.start,), g.start, ())
        bk = bank(g)

        def contains(n):
            if n == 0:
                return g.epsilon
            with bk.lock:
                return n > 0 and bk.derives(bk.start, n)

        return cls(contains, grammar=g, name=name)

    @classmethod
    def from_oracle(cls, contains: Callable[[int], bool], witness: PumpingWitness,
                    name: str = "") -> "LanguageSource":
        return cls(contains, witness=witness, name=name)

    @property
    def is_grammar(self) -> bool:
        return self.grammar is not None

    def default_b(self) -> int:
        if self.witness is not None:
            return self.witness.b
        return pumping_constant(self.grammar)

    def mask(self, bound: int) -> int:
        """Membership on ``[0, bound]`` as a bit mask."""
        if self.grammar is not None:
            bk = bank(self.grammar)
            with bk.lock:
                return bk.start_mask(bound)
        return _bits.from_iterable(n for n in range(bound + 1) if self.contains(n))

    def lengths(self, bound: int) -> frozenset[int]:
        return _bits.to_set(self.mask(bound))


@dataclass(frozen=True)
class TupleTrace:
    """The pairs ``(p_0, q_0), ..., (p_h, q_h)`` produced for one length."""

    z_length: int
    steps: tuple[PumpStep, ...]
    b: int

    def __post_init__(self):
        _check_frame(self.z_length, self.steps, self.b, final=True)

    @property
    def h(self) -> int:
        return len(self.steps) - 1


@dataclass(frozen=True, order=True)
class PumpTuple:
    """``<p_h; q_0 < ... < q_k>``, compared without multiplicities."""

    p_h: int
    qs: tuple[int, ...]
    multiplicities: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "qs", tuple(self.qs))
        if self.multiplicities is not None:
            object.__setattr__(self, "multiplicities", tuple(self.multiplicities))
        if self.p_h < 0:
            raise ValueError("p_h must be non-negative")
        if not self.qs or self.qs[0] <= 0 or any(x >= y for x, y in zip(self.qs, self.qs[1:])):
            raise ValueError(f"qs must be a non-empty increasing run of positive integers: {self.qs}")
        if self.multiplicities is not None:
            if len(self.multiplicities) != len(self.qs) or min(self.multiplicities) <= 0:
                raise ValueError("multiplicities must be positive, one per q")

    @property
    def k(self) -> int:
        return len(self.qs) - 1

    @property
    def base(self) -> int:
        """Smallest member: each ``q_j`` taken once."""
        return self.p_h + sum(self.qs)

    def fits(self, b: int) -> bool:
        """Whether the tuple lies in the family for constant ``b``."""
        return 0 <= self.k < b and 0 <= self.p_h < b and all(0 < q <= b for q in self.qs)

    def total(self) -> int:
        if self.multiplicities is None:
            raise ValueError("tuple carries no multiplicities")
        return self.p_h + sum(i * q for i, q in zip(self.multiplicities, self.qs))

    def members(self, bound: int) -> frozenset[int]:
        return _bits.to_set(self.mask(bound))

    def mask(self, bound: int) -> int:
        if self.base > bound:
            return 0
        return (_bits.closure(self.qs, bound - self.base) << self.base) & _bits.full_mask(bound)

    def canonical(self) -> "PumpTuple":
        return PumpTuple(self.p_h, self.qs)

    def __str__(self) -> str:
        return f"<{self.p_h},({','.join(map(str, self.qs))})>"


def _check_frame(z, steps, b, final):
    total_q = 0
    prev_p = None
    for i, step in enumerate(steps):
        if not 0 < step.q <= b:
            raise FrameAssertionError(f"q_{i}={step.q} outside (0, {b}]")
        total_q += step.q
        if z != step.p + total_q:
            raise FrameAssertionError(f"|z|={z} != p_{i} + sum(q) = {step.p + total_q}")
        if step.p < 0:
            raise FrameAssertionError(f"p_{i} < 0")
        if prev_p is not None:
            if prev_p < b:
                raise FrameAssertionError(f"loop ran with p_{i - 1}={prev_p} < b")
            if not step.p < prev_p:
                raise FrameAssertionError("p sequence is not strictly decreasing")
        prev_p = step.p
    if final and (not steps or steps[-1].p >= b):
        raise FrameAssertionError("trace does not end below the pumping constant")


def _pi_step(pi, length, b):
    step = pi(length)
    if not isinstance(step, PumpStep):
        step = PumpStep(*step)
    if step.p + step.q != length or not 0 < step.q <= b:
        raise WitnessViolation(f"pi({length}) = ({step.p}, {step.q}) violates l = p + q, 0 < q <= {b}")
    return step


def tuple_generate(source: LanguageSource, witness: PumpingWitness, length: int) -> TupleTrace:
    """Run the descent ``(p_0, q_0) = pi(|z|)``, then ``pi(p_i)`` while ``p_i >= b``.

    The loop invariant ``|z| = p_i + q_0 + ... + q_i``, ``0 < q_j <= b``,
    ``p_i >= 0`` is checked after every step and ``p_h < b`` on exit.
    """
    b = witness.b
    if length < b:
        raise BelowConstant(length, b)
    if not source.contains(length):
        raise NotInLanguage(length)
    pi = witness.session(length)
    steps = [_pi_step(pi, length, b)]
    _check_frame(length, steps, b, final=False)
    p = steps[0][0]
    while p >= b:
        step = pi(p)
        if type(step) is not PumpStep:
            step = PumpStep(*step)
        np, q = step
        # Frame after this iteration: 0 < q <= b, the residual continues
        # the previous one (so |z| = p_i + sum q still holds), and p drops.
        if not 0 < q <= b or np + q != p:
            raise WitnessViolation(f"pi({p}) = ({np}, {q}) violates l = p + q, 0 < q <= {b}")
        steps.append(step)
        p = np
    return TupleTrace(length, tuple(steps), b)


def tuple_normalize(trace: TupleTrace) -> PumpTuple:
    counts = Counter(step.q for step in trace.steps)
    qs = tuple(sorted(counts))
    tup = PumpTuple(trace.steps[-1].p, qs, tuple(counts[q] for q in qs))
    if tup.total() != trace.z_length:
        raise FrameAssertionError("normalization lost length")
    return tup


def trace_from_tuple(tup: PumpTuple, b: int) -> TupleTrace:
    """A trace that normalizes back to ``tup``.

    The q's are cut smallest first so the largest comes last: every
    intermediate residual is then at least ``p_h + max(qs)``, which is
    ``>= b`` whenever the tuple came from a real trace.
    """
    qs = [q for q, i in zip(tup.qs, tup.multiplicities or (1,) * len(tup.qs)) for _ in range(i)]
    qs.sort()
    z = tup.p_h + sum(qs)
    steps, rest = [], z
    for q in qs:
        rest -= q
        steps.append(PumpStep(rest, q))
    return TupleTrace(z, tuple(steps), b)


def iter_traces(source: LanguageSource, witness: PumpingWitness, z_max: int,
                z_min: int | None = None) -> Iterator[TupleTrace]:
    """Traces of every language length in ``[max(b, z_min), z_max]``, ascending."""
    lo = witness.b if z_min is None else max(witness.b, z_min)
    mask = source.mask(z_max)
    for length in _bits.bits(mask >> lo << lo):
        yield tuple_generate(source, witness, length)


def collect_tuples(source: LanguageSource, witness: PumpingWitness,
                   z_max: int) -> frozenset[PumpTuple]:
    """Canonical tuples of every language length in ``[b, z_max]``."""
    if z_max < witness.b:
        raise ValueError("z_max must be at least b")
    return frozenset(tuple_normalize(t).canonical() for t in iter_traces(source, witness, z_max))


def enumerate_family(b: int) -> frozenset[PumpTuple]:
    """Every tuple with ``p_h < b`` and distinct ``q``'s drawn from ``1..b``."""
    if b < 1:
        raise ValueError("b must be positive")
    out = set()
    for size in range(1, b + 1):
        for qs in itertools.combinations(range(1, b + 1), size):
            for p in range(b):
                out.add(PumpTuple(p, qs))
    return frozenset(out)


def family_size(b: int) -> int:
    return b * (2**b - 1)


@dataclass(frozen=True)
class SplitFailure:
    """Why one split ``length = p + q`` fails.

    ``down`` is ``p`` itself when the pumped-down word is missing;
    ``up`` is the first missing ``p + i*q`` with ``i >= 2`` (``<= bound``).
    """

    p: int
    q: int
    down: int | None
    up: int | None

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q, "down": self.down, "up": self.up}


@dataclass(frozen=True)
class PL1Report:
    """Outcome of a bounded PL1 check.

    On failure ``failing_length`` is the least length with no admissible
    split and ``evidence`` explains, split by split, where each
    progression leaves the language.
    """

    passed: bool
    b: int
    bound: int
    checked: int
    witnesses: dict[int, tuple[int, int]] = field(default_factory=dict, repr=False)
    failing_length: int | None = None
    evidence: tuple[SplitFailure, ...] = ()

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "b": self.b,
            "bound": self.bound,
            "checked": self.checked,
            "failing_length": self.failing_length,
            "evidence": [e.to_json() for e in self.evidence],
        }


def check_pl1(source: LanguageSource, b: int, bound: int) -> PL1Report:
    """Bounded check of: every length ``l`` in ``[b, bound]`` splits as
    ``p + q`` with ``0 < q <= b`` and ``p + i*q`` in the language for all
    ``i >= 0`` with ``p + i*q <= bound``.  Splits are tried with ``q``
    ascending."""
    if b < 1 or bound < b:
        raise ValueError("need 1 <= b <= bound")
    mask = source.mask(bound)
    member = [bool(mask >> n & 1) for n in range(bound + 1)]
    # first_gap[q][x]: first n = x + i*q (i >= 0, n <= bound) outside the language, or -1
    first_gap: dict[int, list[int]] = {}

    def gaps(q):
        table = first_gap.get(q)
        if table is None:
            table = [-1] * (bound + 1)
            for x in range(bound, -1, -1):
                if not member[x]:
                    table[x] = x
                elif x + q <= bound:
                    table[x] = table[x + q]
            first_gap[q] = table
        return table

    witnesses = {}
    checked = 0
    for length in range(b, bound + 1):
        if not member[length]:
            continue
        checked += 1
        evidence = []
        for q in range(1, min(b, length) + 1):
            p = length - q
            down = None if member[p] else p
            up = gaps(q)[length + q] if length + q <= bound else -1
            up = None if up < 0 else up
            if down is None and up is None:
                witnesses[length] = (p, q)
                break
            evidence.append(SplitFailure(p, q, down, up))
        else:
            return PL1Report(False, b, bound, checked, witnesses, length, tuple(evidence))
    return PL1Report(True, b, bound, checked, witnesses)
