"""Length sets packed into Python ints: bit ``n`` set means length ``n`` is a member."""

from __future__ import annotations

from typing import Iterable, Iterator


def full_mask(bound: int) -> int:
    return (1 << (bound + 1)) - 1


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_set(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))


def from_iterable(values: Iterable[int]) -> int:
    mask = 0
    for v in values:
        mask |= 1 << v
    return mask


def sumset(x: int, y: int, bound: int) -> int:
    """``{i + j : i in x, j in y}`` truncated to ``[0, bound]``."""
    if x.bit_count() > y.bit_count():
        x, y = y, x
    out = 0
    for k in bits(x):
        if k > bound:
            break
        out |= y << k
    return out & full_mask(bound)


def closure(periods: Iterable[int], bound: int) -> int:
    """All non-negative combinations of ``periods`` that are ``<= bound``."""
    top = full_mask(bound)
    reach = 1
    for q in periods:
        if q <= 0:
            continue
        shift = q
        while shift <= bound:
            reach = (reach | (reach << shift)) & top
            shift <<= 1
    return reach
