"""Permutations, patterns and squares.

A permutation of length ``n`` is stored as a plain tuple holding each of
``0 .. n-1`` exactly once (zero-indexed one-line notation).  Tuples keep the
hot loops of the enumeration code cheap; :func:`as_permutation` is the
validating constructor.

>>> pattern_of((5, 2, 4, 10))
(2, 0, 1, 3)
>>> find_square((0, 1, 5, 6, 3, 2, 4))
SquareLocation(start=0, half_length=2)
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import InvalidInput, NotUudd

__all__ = [
    "Permutation", "SquareLocation", "EntryCategory",
    "as_permutation", "parse_permutation", "format_permutation",
    "pattern_of", "order_isomorphic", "order_isomorphic_truncated",
    "reverse", "complement", "reverse_complement",
    "find_square", "is_square_free", "satisfies_uudd", "entry_category",
    "left_extensions", "right_extensions", "find_kth_power",
    "right_kill_mask", "left_kill_mask", "append_value", "prepend_value",
    "square_half_lengths",
]

Permutation = tuple  # tuple[int, ...] holding 0..n-1


def as_permutation(values: Iterable[int]) -> Permutation:
    """Validate ``values`` as a permutation of ``0..n-1`` and return it as a tuple."""
    perm = tuple(values)
    if sorted(perm) != list(range(len(perm))):
        raise InvalidInput(f"not a permutation of 0..{len(perm) - 1}: {perm!r}")
    return perm


def parse_permutation(text: str) -> Permutation:
    """Parse the comma-separated text form, e.g. ``"0,6,5,2,4,7,3,1,8"``."""
    text = text.strip()
    if not text:
        return ()
    try:
        values = [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise InvalidInput(f"malformed permutation text: {text!r}") from exc
    return as_permutation(values)


def format_permutation(perm: Sequence[int]) -> str:
    return ",".join(str(v) for v in perm)


def _argsort(w: Sequence[int]) -> list[int]:
    # two windows are order-isomorphic iff their argsorts agree
    return sorted(range(len(w)), key=w.__getitem__)


def pattern_of(values: Sequence[int]) -> Permutation:
    """Return the unique permutation order-isomorphic to ``values``."""
    if len(set(values)) != len(values):
        raise InvalidInput(f"entries are not distinct: {tuple(values)!r}")
    result = [0] * len(values)
    for rank, index in enumerate(_argsort(values)):
        result[index] = rank
    return tuple(result)


def order_isomorphic(a: Sequence[int], b: Sequence[int]) -> bool:
    return len(a) == len(b) and _argsort(a) == _argsort(b)


def order_isomorphic_truncated(a: Sequence[int], b: Sequence[int]) -> bool:
    """Order-isomorphism after cutting the longer sequence to the shorter's length."""
    size = min(len(a), len(b))
    return _argsort(a[:size]) == _argsort(b[:size])


def reverse(perm: Sequence[int]) -> Permutation:
    return tuple(reversed(perm))


def complement(perm: Sequence[int]) -> Permutation:
    top = len(perm) - 1
    return tuple(top - v for v in perm)


def reverse_complement(perm: Sequence[int]) -> Permutation:
    top = len(perm) - 1
    return tuple(top - v for v in reversed(perm))


@dataclass(frozen=True)
class SquareLocation:
    """A square ``perm[start:start+2*half_length]`` with order-isomorphic halves."""

    start: int
    half_length: int

    @classmethod
    def at(cls, perm: Sequence[int], start: int, half_length: int) -> "SquareLocation":
        """Build a location, checking that a square really sits there."""
        if half_length < 2 or start < 0 or start + 2 * half_length > len(perm):
            raise InvalidInput(f"window ({start}, {half_length}) out of range")
        mid = start + half_length
        if not order_isomorphic(perm[start:mid], perm[mid:mid + half_length]):
            raise InvalidInput(f"no square at ({start}, {half_length})")
        return cls(start, half_length)

    @property
    def end(self) -> int:
        return self.start + 2 * self.half_length


def _steps_up(perm: Sequence[int]) -> list[bool]:
    return [perm[i] < perm[i + 1] for i in range(len(perm) - 1)]


def satisfies_uudd(perm: Sequence[int]) -> bool:
    """True iff the up/down steps alternate two ups, two downs (no length-4 square)."""
    up = _steps_up(perm)
    return all(up[i] != up[i + 2] for i in range(len(up) - 2))


def square_half_lengths(n: int, uudd: bool = True) -> list[int]:
    """Half-lengths a square can have inside a length-``n`` permutation.

    In an up-up-down-down permutation every square has half-length 2 or a
    multiple of 4, so only those are listed when ``uudd`` is set.
    """
    if uudd:
        return [2] + list(range(4, n // 2 + 1, 4)) if n >= 4 else []
    return list(range(2, n // 2 + 1))


def find_square(perm: Sequence[int]) -> Optional[SquareLocation]:
    """Return the square with smallest start, then smallest half-length, or None."""
    n = len(perm)
    halves = square_half_lengths(n, uudd=satisfies_uudd(perm))
    for start in range(n - 3):
        for half in halves:
            mid = start + half
            if mid + half > n:
                break
            if _argsort(perm[start:mid]) == _argsort(perm[mid:mid + half]):
                return SquareLocation(start, half)
    return None


def is_square_free(perm: Sequence[int]) -> bool:
    return find_square(perm) is None


def find_kth_power(perm: Sequence[int], k: int) -> Optional[tuple[int, int]]:
    """Locate ``k`` consecutive pairwise order-isomorphic blocks of length >= 2.

    Returns ``(start, block_length)`` with the same tie-break as
    :func:`find_square`, or None.
    """
    if k < 2:
        raise InvalidInput("k must be at least 2")
    n = len(perm)
    for start in range(n):
        for block in range(2, (n - start) // k + 1):
            key = _argsort(perm[start:start + block])
            if all(
                _argsort(perm[s:s + block]) == key
                for s in range(start + block, start + k * block, block)
            ):
                return start, block
    return None


class EntryCategory(enum.Enum):
    HIGH = "high"
    MEDIUM = "medium"
    LOW = "low"


def entry_category(perm: Sequence[int], i: int) -> EntryCategory:
    """Classify entry ``i`` of an up-up-down-down permutation.

    End entries use the step obtained by continuing the 4-periodic up/down
    phase one position past the boundary.
    """
    if not satisfies_uudd(perm):
        raise NotUudd(f"{tuple(perm)!r} violates the up-up-down-down condition")
    n = len(perm)
    if not 0 <= i < n:
        raise IndexError(i)
    up = _steps_up(perm)

    def step(j: int) -> Optional[bool]:
        if 0 <= j < len(up):
            return up[j]
        # up(j) iff down(j + 2)
        partner = j + 2 if j < 0 else j - 2
        if 0 <= partner < len(up):
            return not up[partner]
        return None

    into, out = step(i - 1), step(i)
    if into is True and out is False:
        return EntryCategory.HIGH
    if into is False and out is True:
        return EntryCategory.LOW
    return EntryCategory.MEDIUM


def append_value(perm: Sequence[int], x: int) -> Permutation:
    """Right-extension of ``perm`` whose new last entry is ``x``."""
    return tuple(v + (v >= x) for v in perm) + (x,)


def prepend_value(perm: Sequence[int], x: int) -> Permutation:
    """Left-extension of ``perm`` whose new first entry is ``x``."""
    return (x,) + tuple(v + (v >= x) for v in perm)


def right_extensions(perm: Sequence[int]) -> list[Permutation]:
    return [append_value(perm, x) for x in range(len(perm) + 1)]


def left_extensions(perm: Sequence[int]) -> list[Permutation]:
    return [prepend_value(perm, x) for x in range(len(perm) + 1)]


def _gap_bits(sorted_vals: Sequence[int], rank: int, top: int) -> int:
    # inserted values x in [lo, hi] land at position `rank` among sorted_vals
    lo = sorted_vals[rank - 1] + 1 if rank else 0
    hi = sorted_vals[rank] if rank < len(sorted_vals) else top
    return ((1 << (hi - lo + 1)) - 1) << lo


def right_kill_mask(perm: Sequence[int]) -> int:
    """Bitmask of appended values ``x`` for which ``append_value(perm, x)`` has a square.

    Only valid for square-free ``perm``: any new square must end at the new
    entry and, as the extension either breaks the up-up-down-down condition
    (half-length 2) or keeps it, has half-length 2 or a multiple of 4.  For
    each half-length the square exists iff the first halves agree after
    dropping their last entries, and then the new value must fall into one
    gap, so every half-length kills a contiguous run of values.
    """
    n = len(perm)
    mask = 0
    for half in square_half_lengths(n + 1):
        a0 = n + 1 - 2 * half
        b0 = a0 + half
        head = perm[a0:b0 - 1]
        tail = perm[b0:n]
        if half > 2 and _argsort(head) != _argsort(tail):
            continue
        pivot = perm[b0 - 1]
        rank = sum(1 for v in head if v < pivot)
        mask |= _gap_bits(sorted(tail), rank, n)
    return mask


def left_kill_mask(perm: Sequence[int]) -> int:
    """Mirror of :func:`right_kill_mask` for prepended values."""
    n = len(perm)
    mask = 0
    for half in square_half_lengths(n + 1):
        head = perm[0:half - 1]
        tail = perm[half:2 * half - 1]
        if half > 2 and _argsort(head) != _argsort(tail):
            continue
        pivot = perm[half - 1]
        rank = sum(1 for v in tail if v < pivot)
        mask |= _gap_bits(sorted(head), rank, n)
    return mask
