"""Linear and semilinear subsets of N^n.

A linear set is ``{v0 + n1*v1 + ... + nk*vk : ni >= 0}``; a semilinear
set is a finite union of linear sets.  In dimension one these are exactly
the eventually periodic sets, and the conversions below go both ways.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _bits
from .automata import EventuallyPeriodicSet
from .errors import DimensionMismatch

Vector = tuple[int, ...]


def _vec(v) -> Vector:
    return (v,) if isinstance(v, int) else tuple(v)


@dataclass(frozen=True)
class LinearSet:
    offset: Vector
    periods: tuple[Vector, ...] = ()

    def __post_init__(self):
        offset = _vec(self.offset)
        periods = tuple(_vec(p) for p in self.periods)
        if not offset:
            raise ValueError("dimension must be at least 1")
        if any(len(p) != len(offset) for p in periods):
            raise DimensionMismatch("all periods must have the offset's dimension")
        if any(x < 0 for x in offset) or any(x < 0 for p in periods for x in p):
            raise ValueError("vectors must be in N^n")
        object.__setattr__(self, "offset", offset)
        object.__setattr__(self, "periods", periods)

    @property
    def dimension(self) -> int:
        return len(self.offset)

    @classmethod
    def unary(cls, offset: int, periods: Iterable[int] = ()) -> "LinearSet":
        return cls((offset,), tuple((p,) for p in periods))

    def to_json(self) -> dict:
        return {"offset": list(self.offset), "periods": [list(p) for p in self.periods]}

    def __contains__(self, v) -> bool:
        return linear_member(self, v)


def linear_member(ls: LinearSet, v) -> bool:
    """Is ``v`` of the form ``offset + sum(n_i * period_i)``?

    All-zero periods are dropped; every remaining period has a positive
    component, which bounds its coefficient, so the search is finite.
    """
    v = _vec(v)
    if len(v) != ls.dimension:
        raise DimensionMismatch(f"vector of dimension {len(v)} vs set of dimension {ls.dimension}")
    target = tuple(a - b for a, b in zip(v, ls.offset))
    if min(target) < 0:
        return False
    periods = [p for p in ls.periods if any(p)]
    if not periods:
        return not any(target)
    if ls.dimension == 1:
        return bool(_bits.closure((p[0] for p in periods), target[0]) >> target[0] & 1)
    # Lexicographic order visits x - p before x for every period p.
    reach: set[Vector] = set()
    for x in itertools.product(*(range(t + 1) for t in target)):
        if not any(x) or any(
            all(a >= b for a, b in zip(x, p)) and tuple(a - b for a, b in zip(x, p)) in reach
            for p in periods
        ):
            reach.add(x)
    return target in reach


def tuple_to_linear(tup) -> LinearSet:
    """``<p_h; q_0..q_k>`` as ``{p_h + q_0 + ... + q_k + sum(n_j q_j)}``.

    The offset absorbs one copy of each ``q_j`` because every ``i_j`` is
    strictly positive in the tuple language.
    """
    return LinearSet.unary(tup.p_h + sum(tup.qs), tup.qs)


def linear_to_eps(ls: LinearSet) -> EventuallyPeriodicSet:
    """Exact eventually periodic form of a one-dimensional linear set.

    With ``g`` the gcd of the periods, the numerical semigroup they
    generate contains every multiple of ``g`` beyond ``q_max**2``.  The
    closure is computed by dynamic programming up to ``q_max**2 + q_max``
    and the top ``q_max`` values are checked to be exactly the multiples
    of ``g``; if not, the window is doubled.
    """
    if ls.dimension != 1:
        raise DimensionMismatch("only one-dimensional linear sets convert to unary sets")
    offset = ls.offset[0]
    periods = sorted({p[0] for p in ls.periods if p[0] > 0})
    if not periods:
        return EventuallyPeriodicSet.finite({offset})
    g = math.gcd(*periods)
    qmax = periods[-1]
    window = qmax * qmax + qmax
    while True:
        reach = _bits.closure(periods, window)
        top = range(window - qmax + 1, window + 1)
        if all(bool(reach >> x & 1) == (x % g == 0) for x in top):
            break
        window *= 2
    start = window - qmax + 1
    low = {offset + x for x in _bits.bits(reach) if x < start}
    cyc = {r for r in range(g) if (start + r) % g == 0}
    return EventuallyPeriodicSet(offset + start, g, low, cyc)


@dataclass(frozen=True)
class SemilinearSet:
    components: tuple[LinearSet, ...] = ()
    dimension: int = 1

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if comps and self.dimension != comps[0].dimension:
            object.__setattr__(self, "dimension", comps[0].dimension)
        if any(c.dimension != self.dimension for c in comps):
            raise DimensionMismatch("components of a semilinear set must share one dimension")

    def __contains__(self, v) -> bool:
        return semilinear_member(self, v)

    def to_json(self) -> dict:
        return {"dimension": self.dimension, "components": [c.to_json() for c in self.components]}


def semilinear_union(sets: Sequence[SemilinearSet | LinearSet]) -> SemilinearSet:
    comps: list[LinearSet] = []
    dims = set()
    for s in sets:
        if isinstance(s, LinearSet):
            comps.append(s)
            dims.add(s.dimension)
        else:
            comps.extend(s.components)
            dims.add(s.dimension)
    if len(dims) > 1:
        raise DimensionMismatch(f"mixed dimensions {sorted(dims)}")
    return SemilinearSet(tuple(comps), dims.pop() if dims else 1)


def semilinear_member(ss: SemilinearSet, v) -> bool:
    v = _vec(v)
    if len(v) != ss.dimension:
        raise DimensionMismatch(f"vector of dimension {len(v)} vs set of dimension {ss.dimension}")
    return any(linear_member(c, v) for c in ss.components)


def eps_to_semilinear(eps: EventuallyPeriodicSet) -> SemilinearSet:
    """One period-free component per low member, one ``(t + r) + N*p`` per residue."""
    comps = [LinearSet.unary(m) for m in sorted(eps.low)]
    comps += [LinearSet.unary(eps.threshold + r, (eps.period,)) for r in sorted(eps.cyc)]
    return SemilinearSet(tuple(comps), 1)
