"""Unary automata: weighted NFAs, lasso DFAs and eventually periodic sets.

Every unary DFA is a *lasso*: a tail of ``t`` states followed by a cycle
of ``c`` states, so it is fully described by ``t``, ``c`` and the set of
accepting positions.  Minimization reduces the cycle to its smallest
period and then pulls the cycle start back as far as the acceptance word
allows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

from . import _bits

State = Hashable


@dataclass(frozen=True)
class UnaryNFA:
    """NFA whose arcs consume a fixed number of ``a``'s (possibly zero)."""

    states: frozenset
    transitions: tuple[tuple[State, int, State], ...]
    initials: frozenset
    finals: frozenset

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "transitions", tuple(tuple(t) for t in self.transitions))
        object.__setattr__(self, "initials", frozenset(self.initials))
        object.__setattr__(self, "finals", frozenset(self.finals))
        if not self.initials <= self.states or not self.finals <= self.states:
            raise ValueError("initial and final states must be states")
        for src, w, dst in self.transitions:
            if src not in self.states or dst not in self.states:
                raise ValueError(f"transition {src}-{w}->{dst} uses an unknown state")
            if w < 0:
                raise ValueError("weights must be non-negative")
        if _has_zero_cycle(self):
            raise ValueError("cycle of weight-0 transitions")

    def accepts(self, n: int) -> bool:
        return nfa_accepts(self, n)


def _has_zero_cycle(nfa: UnaryNFA) -> bool:
    succ: dict = {}
    for src, w, dst in nfa.transitions:
        if w == 0:
            succ.setdefault(src, []).append(dst)
    color: dict = {}
    for root in succ:
        if root in color:
            continue
        color[root] = 1
        stack = [(root, iter(succ.get(root, ())))]
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = 2
                stack.pop()
            elif color.get(nxt) == 1:
                return True
            elif nxt not in color:
                color[nxt] = 1
                stack.append((nxt, iter(succ.get(nxt, ()))))
    return False


def empty_nfa() -> UnaryNFA:
    return UnaryNFA({0}, (), {0}, ())


def tuple_to_nfa(tup) -> UnaryNFA:
    """Two-state NFA for ``<p_h; q_0..q_k>``.

    State 0 (initial) reaches state 1 (final) by one arc of weight
    ``p_h + q_0 + ... + q_k``; state 1 loops on each ``q_j``.  The arc
    pays for one copy of every ``q_j``, the loops for the rest.
    """
    arcs = [(0, tup.p_h + sum(tup.qs), 1)] + [(1, q, 1) for q in tup.qs]
    return UnaryNFA({0, 1}, arcs, {0}, {1})


def nfa_union(nfas: Sequence[UnaryNFA]) -> UnaryNFA:
    """Disjoint union under a fresh initial state with weight-0 arcs.

    States are renumbered: ``0`` is the new initial state.
    """
    if not nfas:
        raise ValueError("nfa_union needs at least one automaton")
    states, arcs, finals = {0}, [], set()
    offset = 1
    for nfa in nfas:
        number = {s: offset + i for i, s in enumerate(sorted(nfa.states, key=repr))}
        offset += len(number)
        states.update(number.values())
        arcs.extend((number[s], w, number[d]) for s, w, d in nfa.transitions)
        arcs.extend((0, 0, number[s]) for s in sorted(nfa.initials, key=repr))
        finals.update(number[s] for s in nfa.finals)
    return UnaryNFA(states, arcs, {0}, finals)


def nfa_lengths(nfa: UnaryNFA, bound: int) -> frozenset[int]:
    """All accepted lengths ``<= bound``, by dynamic programming on
    (consumed length, state) without expanding arcs."""
    zero: dict = {}
    heavy: dict = {}
    for src, w, dst in nfa.transitions:
        (zero if w == 0 else heavy).setdefault(src, []).append((w, dst))
    reach: list[set] = [set() for _ in range(bound + 1)]
    if bound >= 0:
        reach[0] = set(nfa.initials)
    out = []
    for n in range(bound + 1):
        cur = reach[n]
        stack = list(cur)
        while stack:
            s = stack.pop()
            for _, d in zero.get(s, ()):
                if d not in cur:
                    cur.add(d)
                    stack.append(d)
        if cur & nfa.finals:
            out.append(n)
        for s in cur:
            for w, d in heavy.get(s, ()):
                if n + w <= bound:
                    reach[n + w].add(d)
        reach[n] = None  # free memory early
    return frozenset(out)


def nfa_accepts(nfa: UnaryNFA, n: int) -> bool:
    if n < 0:
        return False
    return n in nfa_lengths(nfa, n)


@dataclass(frozen=True)
class UnaryDFA:
    """Lasso DFA: input length ``n`` ends in state ``n`` if ``n < tail + cycle``,
    otherwise in ``tail + (n - tail) % cycle``."""

    tail: int
    cycle: int
    accepting: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        if self.tail < 0 or self.cycle < 1:
            raise ValueError("need tail >= 0 and cycle >= 1")
        if any(not 0 <= a < self.tail + self.cycle for a in self.accepting):
            raise ValueError("accepting positions must lie in [0, tail + cycle)")

    def state(self, n: int) -> int:
        if n < self.tail + self.cycle:
            return n
        return self.tail + (n - self.tail) % self.cycle

    def accepts(self, n: int) -> bool:
        return n >= 0 and self.state(n) in self.accepting

    def to_json(self) -> dict:
        return {"tail": self.tail, "cycle": self.cycle, "accepting": sorted(self.accepting)}

    @classmethod
    def from_json(cls, data: dict) -> "UnaryDFA":
        return cls(data["tail"], data["cycle"], data["accepting"])


def determinize(nfa: UnaryNFA) -> UnaryDFA:
    """Subset construction over the unit-arc expansion of ``nfa``.

    Over one letter the subset automaton is a single path that eventually
    revisits a subset; the first revisit closes the lasso.
    """
    index = {s: i for i, s in enumerate(sorted(nfa.states, key=repr))}
    count = len(index)
    unit: list[int] = [0] * count
    zero: list[list[int]] = [[] for _ in range(count)]

    def new_state():
        nonlocal count
        unit.append(0)
        zero.append([])
        count += 1
        return count - 1

    for src, w, dst in nfa.transitions:
        s, d = index[src], index[dst]
        if w == 0:
            zero[s].append(d)
            continue
        for _ in range(w - 1):
            mid = new_state()
            unit[s] |= 1 << mid
            s = mid
        unit[s] |= 1 << d

    # weight-0 closure of each original state, as a mask
    closure = []
    for i in range(count):
        seen, stack = {i}, [i]
        while stack:
            for d in zero[stack.pop()]:
                if d not in seen:
                    seen.add(d)
                    stack.append(d)
        closure.append(_bits.from_iterable(seen))

    def close(mask):
        out = 0
        for i in _bits.bits(mask):
            out |= closure[i]
        return out

    finals = _bits.from_iterable(index[s] for s in nfa.finals)
    current = close(_bits.from_iterable(index[s] for s in nfa.initials))
    seen: dict[int, int] = {}
    accepting = []
    n = 0
    while current not in seen:
        seen[current] = n
        if current & finals:
            accepting.append(n)
        step = 0
        for i in _bits.bits(current):
            step |= unit[i]
        current = close(step)
        n += 1
    tail = seen[current]
    return UnaryDFA(tail, n - tail, accepting)


def _canonical_lasso(tail: int, word: Sequence[bool]) -> tuple[int, tuple[bool, ...]]:
    """Minimal period, then minimal tail, of the lasso ``word`` (length tail+cycle)."""
    cyc = list(word[tail:])
    c = len(cyc)
    for d in range(1, c + 1):
        if c % d == 0 and all(cyc[i] == cyc[i % d] for i in range(c)):
            cyc = cyc[:d]
            break
    head = list(word[:tail])
    while head and head[-1] == cyc[-1]:
        head.pop()
        cyc = [cyc[-1]] + cyc[:-1]
    return len(head), tuple(head + cyc)


def minimize(dfa: UnaryDFA) -> UnaryDFA:
    word = [p in dfa.accepting for p in range(dfa.tail + dfa.cycle)]
    tail, word = _canonical_lasso(dfa.tail, word)
    return UnaryDFA(tail, len(word) - tail, (i for i, a in enumerate(word) if a))


@dataclass(frozen=True)
class EventuallyPeriodicSet:
    """``n`` is a member iff ``n < threshold and n in low`` or
    ``n >= threshold and (n - threshold) % period in cyc``.

    Instances are brought to canonical form on construction (smallest
    period, then smallest threshold), so equality is set equality.
    """

    threshold: int
    period: int
    low: frozenset[int] = frozenset()
    cyc: frozenset[int] = frozenset()

    def __post_init__(self):
        low, cyc = frozenset(self.low), frozenset(self.cyc)
        if self.threshold < 0 or self.period < 1:
            raise ValueError("need threshold >= 0 and period >= 1")
        if any(not 0 <= x < self.threshold for x in low):
            raise ValueError("low members must lie below the threshold")
        if any(not 0 <= r < self.period for r in cyc):
            raise ValueError("cyclic residues must lie in [0, period)")
        word = [x in low for x in range(self.threshold)] + [r in cyc for r in range(self.period)]
        t, word = _canonical_lasso(self.threshold, word)
        object.__setattr__(self, "threshold", t)
        object.__setattr__(self, "period", len(word) - t)
        object.__setattr__(self, "low", frozenset(i for i in range(t) if word[i]))
        object.__setattr__(self, "cyc", frozenset(r for r in range(len(word) - t) if word[t + r]))

    def __contains__(self, n: int) -> bool:
        if n < 0:
            return False
        if n < self.threshold:
            return n in self.low
        return (n - self.threshold) % self.period in self.cyc

    def members(self, bound: int) -> frozenset[int]:
        return frozenset(n for n in range(bound + 1) if n in self)

    @property
    def is_empty(self) -> bool:
        return not self.low and not self.cyc

    @property
    def is_finite(self) -> bool:
        return not self.cyc

    @classmethod
    def empty(cls) -> "EventuallyPeriodicSet":
        return cls(0, 1)

    @classmethod
    def finite(cls, values: Iterable[int]) -> "EventuallyPeriodicSet":
        values = frozenset(values)
        return cls(max(values, default=-1) + 1, 1, values)

    @classmethod
    def from_predicate(cls, pred: Callable[[int], bool], threshold: int,
                       period: int) -> "EventuallyPeriodicSet":
        """Sample ``pred`` on ``[0, threshold + period)``; the caller vouches
        that it is ``period``-periodic from ``threshold`` on."""
        low = {n for n in range(threshold) if pred(n)}
        cyc = {r for r in range(period) if pred(threshold + r)}
        return cls(threshold, period, low, cyc)

    def to_json(self) -> dict:
        return {
            "threshold": self.threshold,
            "period": self.period,
            "low": sorted(self.low),
            "cyc": sorted(self.cyc),
        }

    @classmethod
    def from_json(cls, data: dict) -> "EventuallyPeriodicSet":
        return cls(data["threshold"], data["period"], data["low"], data["cyc"])


EPS = EventuallyPeriodicSet


def dfa_to_eps(dfa: UnaryDFA) -> EventuallyPeriodicSet:
    low = {a for a in dfa.accepting if a < dfa.tail}
    cyc = {a - dfa.tail for a in dfa.accepting if a >= dfa.tail}
    return EventuallyPeriodicSet(dfa.tail, dfa.cycle, low, cyc)


def eps_to_dfa(eps: EventuallyPeriodicSet) -> UnaryDFA:
    accepting = set(eps.low) | {eps.threshold + r for r in eps.cyc}
    return UnaryDFA(eps.threshold, eps.period, accepting)


def eps_union(x: EventuallyPeriodicSet, y: EventuallyPeriodicSet) -> EventuallyPeriodicSet:
    return EventuallyPeriodicSet.from_predicate(
        lambda n: n in x or n in y,
        max(x.threshold, y.threshold),
        math.lcm(x.period, y.period),
    )


def eps_union_all(sets: Iterable[EventuallyPeriodicSet]) -> EventuallyPeriodicSet:
    out = EventuallyPeriodicSet.empty()
    for s in sets:
        out = eps_union(out, s)
    return out


def eps_restrict_min(eps: EventuallyPeriodicSet, b: int) -> EventuallyPeriodicSet:
    """Drop every member below ``b``."""
    return EventuallyPeriodicSet.from_predicate(
        lambda n: n >= b and n in eps, max(eps.threshold, b), eps.period
    )


def eps_add_finite(eps: EventuallyPeriodicSet, values: Iterable[int]) -> EventuallyPeriodicSet:
    values = frozenset(values)
    if any(v < 0 for v in values):
        raise ValueError("lengths are non-negative")
    return EventuallyPeriodicSet.from_predicate(
        lambda n: n in values or n in eps,
        max(eps.threshold, max(values, default=-1) + 1),
        eps.period,
    )


def _word(k: int) -> str:
    return "a" * k if k else "ε"


def eps_to_regex(eps: EventuallyPeriodicSet) -> str:
    """Regular expression over ``a``: ``a^m`` for each low member and
    ``a^(t+r)(a^p)*`` per cyclic residue, joined by ``|``.

    ``a^k`` is written out as ``k`` letters; ``ε`` is the empty word and
    ``∅`` the empty set.
    """
    terms = _regex_terms(eps)
    if not terms:
        return "∅"
    out = []
    for start, period in terms:
        if period is None:
            out.append(_word(start))
        else:
            loop = f"({'a' * period})*"
            out.append(("a" * start) + loop)
    return "|".join(out)


def _regex_terms(eps):
    terms = [(m, None) for m in sorted(eps.low)]
    terms += [(eps.threshold + r, eps.period) for r in sorted(eps.cyc)]
    return terms


def eps_to_regex_json(eps: EventuallyPeriodicSet) -> dict:
    """Machine-readable form of :func:`eps_to_regex`."""
    return {
        "text": eps_to_regex(eps),
        "terms": [{"offset": s, "period": p} for s, p in _regex_terms(eps)],
    }
