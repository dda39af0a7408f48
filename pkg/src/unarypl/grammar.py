"""Context-free grammars over the one-letter terminal alphabet ``{a}``.

A unary word is determined by its length, so every question about a
grammar here is a question about a set of natural numbers.  The module
covers the text format, useless-symbol removal, Chomsky normal form, a
length-indexed CYK table, deterministic parse trees and the parse-tree
surgery that yields pumping decompositions.

Grammar text format::

    # comment
    start: S            (optional; default is the lhs of the first rule)
    S -> a S a | a
    T -> eps

The terminal is the lowercase letter ``a``; ``eps`` is the empty right-hand
side; nonterminals are identifiers starting with an uppercase letter.  A
token made only of ``a``'s (``aa``) is read as that many terminals.
"""

from __future__ import annotations

import itertools
import re
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from . import _bits
from .errors import (
    BelowConstant,
    EmptyLanguage,
    GrammarSyntaxError,
    NotInLanguage,
    WitnessViolation,
)

TERMINAL = "a"
EPSILON = "eps"

# Lengths up to this bound are cross-checked after every CNF conversion.
CNF_CHECK_BOUND = 64

_NAME = r"[A-Z]\w*"
_NONTERMINAL = re.compile(rf"^{_NAME}$")
_RULE = re.compile(rf"^({_NAME})\s*->(.*)$")
_START = re.compile(r"^start\s*:\s*(\S+)$")


@dataclass(frozen=True)
class UnaryGrammar:
    """A context-free grammar whose only terminal is ``a``.

    ``productions`` is a tuple of ``(lhs, rhs)`` pairs; ``rhs`` is a tuple of
    symbols and may be empty.
    """

    nonterminals: tuple[str, ...]
    start: str
    productions: tuple[tuple[str, tuple[str, ...]], ...]

    def __post_init__(self):
        object.__setattr__(self, "nonterminals", tuple(self.nonterminals))
        object.__setattr__(
            self, "productions", tuple((lhs, tuple(rhs)) for lhs, rhs in self.productions)
        )
        names = set(self.nonterminals)
        if len(names) != len(self.nonterminals):
            raise ValueError("duplicate nonterminal names")
        if not self.productions:
            raise ValueError("a grammar needs at least one production")
        if self.start not in names:
            raise ValueError(f"start symbol {self.start!r} is not a nonterminal")
        for lhs, rhs in self.productions:
            if lhs not in names:
                raise ValueError(f"undeclared nonterminal {lhs!r}")
            for sym in rhs:
                if sym != TERMINAL and sym not in names:
                    raise ValueError(f"undeclared symbol {sym!r} in rule for {lhs}")

    def rules(self, lhs: str) -> list[tuple[str, ...]]:
        return [rhs for left, rhs in self.productions if left == lhs]

    def __str__(self) -> str:
        lines = [f"start: {self.start}"]
        for lhs in self.nonterminals:
            alts = self.rules(lhs)
            if alts:
                body = " | ".join(" ".join(rhs) if rhs else EPSILON for rhs in alts)
                lines.append(f"{lhs} -> {body}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class CnfGrammar:
    """Chomsky normal form: every rule is ``A -> B C`` or ``A -> a``.

    The empty word is carried by ``epsilon`` instead of a rule.  When
    ``epsilon`` is set the start symbol never occurs on a right-hand side.
    """

    nonterminals: tuple[str, ...]
    start: str
    productions: tuple[tuple[str, tuple[str, ...]], ...]
    epsilon: bool = False

    def __post_init__(self):
        object.__setattr__(self, "nonterminals", tuple(self.nonterminals))
        object.__setattr__(
            self, "productions", tuple((lhs, tuple(rhs)) for lhs, rhs in self.productions)
        )
        names = set(self.nonterminals)
        if self.start not in names:
            raise ValueError(f"start symbol {self.start!r} is not a nonterminal")
        for lhs, rhs in self.productions:
            if lhs not in names:
                raise ValueError(f"undeclared nonterminal {lhs!r}")
            if rhs == (TERMINAL,):
                continue
            if len(rhs) != 2 or any(s not in names for s in rhs):
                raise ValueError(f"rule {lhs} -> {' '.join(rhs)} is not in CNF")
            if self.epsilon and self.start in rhs:
                raise ValueError("start symbol occurs on a right-hand side while epsilon is set")

    @property
    def binary(self) -> tuple[tuple[str, str, str], ...]:
        return tuple((lhs, *rhs) for lhs, rhs in self.productions if len(rhs) == 2)

    @property
    def terminal(self) -> tuple[str, ...]:
        return tuple(lhs for lhs, rhs in self.productions if len(rhs) == 1)

    def as_grammar(self) -> UnaryGrammar:
        prods = list(self.productions)
        if self.epsilon:
            prods.append((self.start, ()))
        if not prods:
            # The empty language has no rules; keep a self-loop so the result is well formed.
            prods = [(self.start, (self.start,))]
        return UnaryGrammar(self.nonterminals, self.start, prods)

    def __str__(self) -> str:
        return str(self.as_grammar())


@dataclass(frozen=True, eq=False)
class ParseTree:
    """A derivation tree of a CNF grammar.

    A node for ``A -> a`` has no children and yields one terminal; a node for
    ``A -> B C`` has two.  Equality is structural.
    """

    label: str
    children: tuple["ParseTree", ...]
    yield_length: int

    def nodes(self) -> Iterator["ParseTree"]:
        """Preorder traversal, iterative so deep trees are fine."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def depth(self) -> int:
        best = 0
        stack = [(self, 1)]
        while stack:
            node, d = stack.pop()
            best = max(best, d)
            stack.extend((c, d + 1) for c in node.children)
        return best

    def signature(self) -> tuple[tuple[str, int], ...]:
        return tuple((n.label, len(n.children)) for n in self.nodes())

    def __eq__(self, other):
        if not isinstance(other, ParseTree):
            return NotImplemented
        return self.yield_length == other.yield_length and self.signature() == other.signature()

    def __hash__(self):
        return hash((self.label, self.yield_length, len(self.children)))


class PumpStep(tuple):
    """One pumping decomposition ``length = p + q`` with ``q > 0``.

    A validated ``(p, q)`` pair.  It is a tuple subclass because the descent
    builds millions of them and a frozen dataclass costs several times more.
    """

    __slots__ = ()

    def __new__(cls, p: int, q: int):
        if p < 0 or q <= 0:
            raise WitnessViolation(f"invalid pump step p={p}, q={q}")
        return tuple.__new__(cls, (p, q))

    @property
    def p(self) -> int:
        return self[0]

    @property
    def q(self) -> int:
        return self[1]

    @property
    def length(self) -> int:
        return self[0] + self[1]

    def __repr__(self) -> str:
        return f"PumpStep(p={self[0]}, q={self[1]})"


# --------------------------------------------------------------------------
# Parsing


def _parse_rhs(alt: str, lineno: int) -> tuple[str, ...]:
    tokens = alt.split()
    if not tokens:
        raise GrammarSyntaxError("empty alternative (write 'eps' for the empty word)", lineno)
    if tokens == [EPSILON]:
        return ()
    out: list[str] = []
    for tok in tokens:
        if tok == EPSILON:
            raise GrammarSyntaxError("'eps' must be the whole alternative", lineno)
        if _NONTERMINAL.match(tok):
            out.append(tok)
        elif tok.isalpha() and tok.islower():
            bad = next((c for c in tok if c != TERMINAL), None)
            if bad is not None:
                raise GrammarSyntaxError(f"unknown terminal {bad!r}", lineno)
            out.extend(TERMINAL * len(tok))
        else:
            raise GrammarSyntaxError(f"bad symbol {tok!r}", lineno)
    return tuple(out)


def parse_grammar(text: str) -> UnaryGrammar:
    start = None
    order: dict[str, None] = {}
    productions: list[tuple[str, tuple[str, ...]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _START.match(line)
        if m:
            if start is not None:
                raise GrammarSyntaxError("duplicate 'start:' header", lineno)
            start = m.group(1)
            if not _NONTERMINAL.match(start):
                raise GrammarSyntaxError(f"bad start symbol {start!r}", lineno)
            order.setdefault(start)
            continue
        m = _RULE.match(line)
        if not m:
            raise GrammarSyntaxError(f"cannot parse {line!r}", lineno)
        lhs = m.group(1)
        order.setdefault(lhs)
        for alt in m.group(2).split("|"):
            rhs = _parse_rhs(alt, lineno)
            for sym in rhs:
                if sym != TERMINAL:
                    order.setdefault(sym)
            productions.append((lhs, rhs))
    if not productions:
        raise GrammarSyntaxError("grammar has no rules")
    if start is None:
        start = productions[0][0]
    return UnaryGrammar(tuple(order), start, tuple(productions))


def load_grammar(path) -> UnaryGrammar:
    with open(path, encoding="utf-8") as fh:
        return parse_grammar(fh.read())


# --------------------------------------------------------------------------
# Reduction and normal form


def _generating(productions) -> set[str]:
    gen: set[str] = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in productions:
            if lhs not in gen and all(s == TERMINAL or s in gen for s in rhs):
                gen.add(lhs)
                changed = True
    return gen


def _prune(productions, start):
    """Keep generating, reachable rules; ``None`` if start is non-generating."""
    gen = _generating(productions)
    if start not in gen:
        return None
    prods = [(l, r) for l, r in productions if l in gen and all(s == TERMINAL or s in gen for s in r)]
    reach = {start}
    frontier = [start]
    while frontier:
        sym = frontier.pop()
        for lhs, rhs in prods:
            if lhs == sym:
                for s in rhs:
                    if s != TERMINAL and s not in reach:
                        reach.add(s)
                        frontier.append(s)
    return [(l, r) for l, r in prods if l in reach], reach


def reduce(g: UnaryGrammar) -> UnaryGrammar:
    """Drop non-generating and unreachable symbols.

    Raises :class:`EmptyLanguage` when the start symbol derives nothing.
    """
    pruned = _prune(g.productions, g.start)
    if pruned is None:
        raise EmptyLanguage(f"start symbol {g.start} derives no word")
    prods, reach = pruned
    if len(prods) == len(g.productions) and len(reach) == len(g.nonterminals):
        return g
    return UnaryGrammar(tuple(n for n in g.nonterminals if n in reach), g.start, tuple(prods))


class _Names:
    def __init__(self, used):
        self.used = set(used)

    def fresh(self, base: str) -> str:
        name, i = base, 0
        while name in self.used:
            i += 1
            name = f"{base}{i}"
        self.used.add(name)
        return name


def _nullable(productions) -> set[str]:
    null: set[str] = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in productions:
            if lhs not in null and all(s in null for s in rhs):
                null.add(lhs)
                changed = True
    return null


def _unique(items):
    return list(dict.fromkeys(items))


def _drop_nullable(productions, nullable):
    out = []
    for lhs, rhs in productions:
        slots = [(s,) if s not in nullable else (s, None) for s in rhs]
        for choice in itertools.product(*slots):
            new = tuple(s for s in choice if s is not None)
            if new and new != (lhs,):
                out.append((lhs, new))
    return _unique(out)


def _drop_units(productions, order):
    def is_unit(rhs):
        return len(rhs) == 1 and rhs[0] != TERMINAL

    units: dict[str, list[str]] = {}
    for lhs, rhs in productions:
        if is_unit(rhs):
            units.setdefault(lhs, []).append(rhs[0])
    out = []
    for a in order:
        closure = [a]
        seen = {a}
        for b in closure:
            for c in units.get(b, ()):
                if c not in seen:
                    seen.add(c)
                    closure.append(c)
        for b in closure:
            for lhs, rhs in productions:
                if lhs == b and not is_unit(rhs):
                    out.append((a, rhs))
    return _unique(out)


def to_cnf(g: UnaryGrammar, check_bound: int | None = CNF_CHECK_BOUND) -> CnfGrammar:
    """Convert to Chomsky normal form.

    Steps: useless-symbol removal, a fresh start symbol if the start is
    nullable and recursive, epsilon elimination, unit elimination, then
    terminal proxies and right-nested binarization with shared suffixes.
    When ``check_bound`` is set the result's length set is compared with
    a direct fixpoint over ``g`` up to that bound.
    """
    g = reduce(g)
    names = _Names(g.nonterminals)
    order = list(g.nonterminals)
    prods = list(g.productions)
    start = g.start
    epsilon = start in _nullable(prods)
    if epsilon and any(start in rhs for _, rhs in prods):
        start = names.fresh(f"{g.start}0")
        order.insert(0, start)
        prods.insert(0, (start, (g.start,)))

    prods = _drop_nullable(prods, _nullable(prods))
    prods = _drop_units(prods, order)
    pruned = _prune(prods, start)
    if pruned is None:
        # Only the empty word remains.
        cnf = CnfGrammar((start,), start, (), epsilon=True)
        _check_cnf(g, cnf, check_bound)
        return cnf
    prods, reach = pruned
    order = [n for n in order if n in reach]

    # A nonterminal whose only rule is X -> a can stand in for the terminal.
    proxy = None
    for n in order:
        alts = [r for l, r in prods if l == n]
        if n != start and alts == [(TERMINAL,)]:
            proxy = n
            break
    helpers: dict[tuple[str, ...], str] = {}
    extra: list[tuple[str, tuple[str, ...]]] = []
    new_names: list[str] = []

    def term_proxy():
        nonlocal proxy
        if proxy is None:
            proxy = names.fresh("A")
            new_names.append(proxy)
            extra.append((proxy, (TERMINAL,)))
        return proxy

    def suffix(syms: tuple[str, ...]) -> str:
        if syms in helpers:
            return helpers[syms]
        name = names.fresh("X")
        helpers[syms] = name
        new_names.append(name)
        rest = syms[1:]
        tail = rest[0] if len(rest) == 1 else suffix(rest)
        extra.append((name, (syms[0], tail)))
        return name

    out = []
    for lhs, rhs in prods:
        if len(rhs) == 1:
            out.append((lhs, rhs))
            continue
        syms = tuple(term_proxy() if s == TERMINAL else s for s in rhs)
        if len(syms) == 2:
            out.append((lhs, syms))
        else:
            out.append((lhs, (syms[0], suffix(syms[1:]))))
    helper_rules = [p for p in extra if p[0] != proxy]
    proxy_rules = [p for p in extra if p[0] == proxy]
    out = _unique(out + helper_rules + proxy_rules)
    pruned = _prune(out, start)
    assert pruned is not None
    out, reach = pruned
    cnf = CnfGrammar(
        tuple(n for n in order + new_names if n in reach), start, tuple(out), epsilon=epsilon
    )
    _check_cnf(g, cnf, check_bound)
    return cnf


def _check_cnf(g, cnf, bound):
    if bound is None:
        return
    if grammar_lengths(g, bound) != derivable_lengths(cnf, bound):
        raise AssertionError("CNF conversion changed the length set")


def is_finite(g: CnfGrammar) -> bool:
    """True iff the (reduced) grammar has no recursive nonterminal."""
    succ: dict[str, set[str]] = {n: set() for n in g.nonterminals}
    for lhs, rhs in g.productions:
        if len(rhs) == 2:
            succ[lhs].update(rhs)
    state: dict[str, int] = {}
    for root in g.nonterminals:
        if root in state:
            continue
        state[root] = 1
        stack = [(root, iter(succ[root]))]
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[node] = 2
                stack.pop()
            elif state.get(nxt) == 1:
                return False
            elif nxt not in state:
                state[nxt] = 1
                stack.append((nxt, iter(succ[nxt])))
    return True


# --------------------------------------------------------------------------
# Length oracles


def grammar_lengths(g: UnaryGrammar, bound: int) -> frozenset[int]:
    """Lengths ``<= bound`` derivable in ``g``, by least fixpoint over any grammar."""
    masks = dict.fromkeys(g.nonterminals, 0)
    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            acc = 1
            for sym in rhs:
                acc = _bits.sumset(acc, 2 if sym == TERMINAL else masks[sym], bound)
                if not acc:
                    break
            new = masks[lhs] | acc
            if new != masks[lhs]:
                masks[lhs] = new
                changed = True
    return _bits.to_set(masks[g.start])


class _Bank:
    """Length table and hash-consed parse trees for one CNF grammar.

    Tree nodes are integers indexing parallel lists.  Identical subtrees
    share an id, so trees produced by pumping surgery that coincide with
    a previously seen tree hit the same memo entries.
    """

    def __init__(self, g: CnfGrammar):
        self.g = g
        self.names = g.nonterminals
        self.idx = {n: i for i, n in enumerate(g.nonterminals)}
        self.start = self.idx[g.start]
        n = len(g.nonterminals)
        self.term = [False] * n
        self.binary: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for lhs, rhs in g.productions:
            if len(rhs) == 1:
                self.term[self.idx[lhs]] = True
            else:
                self.binary[self.idx[lhs]].append((self.idx[rhs[0]], self.idx[rhs[1]]))
        self.R = 0
        self.masks = [0] * n
        self.rev = [0] * n
        self.label: list[int] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.height: list[int] = []
        self.size: list[int] = []
        self._interned: dict[tuple[int, int, int], int] = {}
        self._canon: dict[tuple[int, int], int] = {}
        self._pump: dict[tuple[int, int], tuple[int, int]] = {}
        self.lock = threading.RLock()

    def ensure(self, bound: int) -> None:
        if bound <= self.R:
            return
        R = max(bound, 2 * self.R, 64)
        masks = [0] * len(self.masks)
        rev = [0] * len(self.masks)
        for a, t in enumerate(self.term):
            if t:
                masks[a] = 2
                rev[a] = 1 << (R - 1)
        # rev[c] holds bit R-k for every length k of c, so (rev[c] >> (R-n))
        # has bit j exactly when c derives length n-j.
        for n in range(2, R + 1):
            shift = R - n
            for a, rules in enumerate(self.binary):
                for b, c in rules:
                    if masks[b] & (rev[c] >> shift):
                        masks[a] |= 1 << n
                        rev[a] |= 1 << shift
                        break
        self.R, self.masks, self.rev = R, masks, rev

    def start_mask(self, bound: int) -> int:
        self.ensure(bound)
        mask = self.masks[self.start] & _bits.full_mask(bound)
        return mask | 1 if self.g.epsilon else mask

    def derives(self, a: int, n: int) -> bool:
        self.ensure(n)
        return bool(self.masks[a] >> n & 1)

    def _split(self, a: int, n: int) -> tuple[int, int, int]:
        shift = self.R - n
        for b, c in self.binary[a]:
            m = self.masks[b] & (self.rev[c] >> shift)
            if m:
                return b, (m & -m).bit_length() - 1, c
        raise AssertionError("length table inconsistent")

    def _node(self, a: int, l: int, r: int) -> int:
        key = (a, l, r)
        node = self._interned.get(key)
        if node is None:
            node = len(self.label)
            self._interned[key] = node
            self.label.append(a)
            self.left.append(l)
            self.right.append(r)
            if l < 0:
                self.height.append(1)
                self.size.append(1)
            else:
                self.height.append(1 + max(self.height[l], self.height[r]))
                self.size.append(self.size[l] + self.size[r])
        return node

    def canon(self, a: int, n: int) -> int:
        """Id of the deterministic parse tree of ``a`` with yield ``n``."""
        found = self._canon.get((a, n))
        if found is not None:
            return found
        if n < 1 or not self.derives(a, n):
            raise NotInLanguage(n)
        canon = self._canon
        stack = [(a, n)]
        while stack:
            key = stack[-1]
            if key in canon:
                stack.pop()
                continue
            x, m = key
            if m == 1 and self.term[x]:
                canon[key] = self._node(x, -1, -1)
                stack.pop()
                continue
            b, k, c = self._split(x, m)
            l, r = canon.get((b, k)), canon.get((c, m - k))
            if l is not None and r is not None:
                canon[key] = self._node(x, l, r)
                stack.pop()
                continue
            if l is None:
                stack.append((b, k))
            if r is None:
                stack.append((c, m - k))
        return canon[(a, n)]

    def longest_path(self, root: int) -> tuple[list[int], list[int]]:
        """Root-to-leaf path through the taller child (left on ties)."""
        path, dirs = [root], []
        node = root
        left, right, height = self.left, self.right, self.height
        while left[node] >= 0:
            l, r = left[node], right[node]
            if height[l] >= height[r]:
                node = l
                dirs.append(0)
            else:
                node = r
                dirs.append(1)
            path.append(node)
        return path, dirs

    def pump(self, root: int, b: int) -> tuple[int, int]:
        """Excise the lowest repeated pair on the longest path.

        Scans the path bottom-up for the lowest node whose label reappears
        below it (paired with the nearest such occurrence), skipping pairs
        whose yield difference exceeds ``b``.  Returns ``(q, residual)``.
        """
        key = (root, b)
        hit = self._pump.get(key)
        if hit is not None:
            return hit
        path, dirs = self.longest_path(root)
        label, size = self.label, self.size
        below: dict[int, int] = {label[path[-1]]: len(path) - 1}
        for u in range(len(path) - 2, -1, -1):
            lab = label[path[u]]
            w = below.get(lab)
            below[lab] = u
            if w is None:
                continue
            q = size[path[u]] - size[path[w]]
            if q <= b:
                break
        else:
            raise WitnessViolation(
                f"no repeated nonterminal with pump length <= {b} in the parse tree "
                f"of length {size[root]}"
            )
        new = path[w]
        for i in range(u - 1, -1, -1):
            node = path[i]
            if dirs[i] == 0:
                new = self._node(label[node], new, self.right[node])
            else:
                new = self._node(label[node], self.left[node], new)
        result = (q, new)
        self._pump[key] = result
        return result

    def export(self, root: int) -> ParseTree:
        built: dict[int, ParseTree] = {}
        stack = [root]
        while stack:
            x = stack[-1]
            if x in built:
                stack.pop()
                continue
            name = self.names[self.label[x]]
            l, r = self.left[x], self.right[x]
            if l < 0:
                built[x] = ParseTree(name, (), 1)
                stack.pop()
            elif l in built and r in built:
                built[x] = ParseTree(name, (built[l], built[r]), self.size[x])
                stack.pop()
            else:
                stack.extend(y for y in (r, l) if y not in built)
        return built[root]


@lru_cache(maxsize=128)
def bank(g: CnfGrammar) -> _Bank:
    return _Bank(g)


def derivable_lengths(g: CnfGrammar, bound: int) -> frozenset[int]:
    """All ``n <= bound`` such that ``a^n`` is derivable from the start symbol."""
    if bound < 0:
        return frozenset()
    bk = bank(g)
    with bk.lock:
        return _bits.to_set(bk.start_mask(bound))


def parse_tree(g: CnfGrammar, length: int) -> ParseTree:
    """Deterministic parse tree of ``a^length``.

    Rules are tried in declaration order and the smallest left yield wins.
    """
    bk = bank(g)
    with bk.lock:
        if length == 0 or not bk.derives(bk.start, length):
            raise NotInLanguage(length)
        return bk.export(bk.canon(bk.start, length))


def pumping_constant(g: CnfGrammar) -> int:
    return 2 ** len(g.nonterminals)


def pump_decompose(g: CnfGrammar, length: int, b: int | None = None) -> PumpStep:
    """Split ``length`` as ``p + q`` by cutting out a repeated nonterminal.

    Every ``p + i*q`` (``i >= 0``) is then derivable: the excised segment
    can be repeated or dropped.  ``b`` defaults to :func:`pumping_constant`.
    """
    if b is None:
        b = pumping_constant(g)
    bk = bank(g)
    with bk.lock:
        if length <= 0 or not bk.derives(bk.start, length):
            raise NotInLanguage(length)
        if length < b:
            raise BelowConstant(length, b)
        q, _ = bk.pump(bk.canon(bk.start, length), b)
    return PumpStep(length - q, q)
