"""Bicrucial permutations of every length for which one exists.

Odd lengths 8k+3 (k >= 3) and even lengths >= 48 come from prefix/middle/
suffix constructions whose middle section is a high-medium-low doubling of a
square-free seed.  Even lengths 32..46 use stored witnesses, and the
remaining odd lengths fall back to a budgeted search.  Every constructed
permutation is re-checked with :func:`~bicrucial.crucial.is_bicrucial`
before it is returned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .crucial import crucial_prefix_length, is_bicrucial
from .errors import (
    BadLength,
    Infeasible,
    InvalidInput,
    NoWitness,
    NotSquareFree,
    Unsatisfiable,
    Unsupported,
    VerificationFailed,
)
from .perm import Permutation, is_square_free, pattern_of
from .search import BudgetExhausted, WalkConfig, Walker

__all__ = [
    "RegionLayout", "hml_double", "exists_bicrucial", "seed_square_free",
    "square_free_seeds", "claim_pi", "build_8k3", "build_even",
    "witness_small_even", "search_bicrucial", "construct_bicrucial",
    "PREFIX_8K3", "SUFFIX_8K3", "PREFIX_EVEN", "EVEN_SUFFIXES", "EVEN_TAIL_PATTERNS",
    "WITNESSES",
]

# left end of the 8k+3 construction, and its right end (shifted into the top region)
PREFIX_8K3 = (0, 6, 5, 2, 4, 7, 3, 1, 8)
SUFFIX_8K3 = (3, 8, 5, 2, 4, 9, 1, 0, 7, 10, 6)

PREFIX_EVEN = (
    8, 2, 0, 20, 29, 19, 3, 4, 7, 5, 1, 30, 31, 21, 6, 9,
    22, 12, 10, 24, 26, 23, 13, 14, 17, 15, 11, 27, 28, 25, 16, 18,
)

# suffix entries as (region, offset) for each suffix length; region 6 is the top band
EVEN_SUFFIXES = {
    7: ((4, 1), (4, 0), (6, 2), (6, 4), (6, 1), (6, 0), (6, 3)),
    # the 8th entry is r6+5: the published vector repeats r6+6, and r6+5 is
    # the only value consistent with the pattern (1,0,6,8,5,3,4,7,2)
    9: ((4, 1), (4, 0), (6, 4), (6, 6), (6, 3), (6, 1), (6, 2), (6, 5), (6, 0)),
    11: ((4, 1), (4, 0), (6, 3), (6, 4), (6, 2), (6, 0), (6, 1), (6, 7), (6, 6), (6, 5), (6, 8)),
    13: ((4, 1), (4, 0), (6, 0), (6, 1), (2, 4), (2, 1), (2, 2), (6, 3), (6, 2), (2, 3),
         (6, 4), (6, 5), (2, 0)),
}

# pattern of the last (suffix length + 7) entries of the even construction
EVEN_TAIL_PATTERNS = {
    7: (0, 4, 7, 3, 1, 2, 8, 6, 5, 11, 13, 10, 9, 12),
    9: (0, 4, 7, 3, 1, 2, 8, 6, 5, 13, 15, 12, 10, 11, 14, 9),
    11: (0, 4, 7, 3, 1, 2, 8, 6, 5, 12, 13, 11, 9, 10, 16, 15, 14, 17),
    13: (0, 9, 12, 8, 1, 7, 13, 11, 10, 14, 15, 6, 3, 4, 17, 16, 5, 18, 19, 2),
}

WITNESSES = {
    # the first 31 entries have the pattern of PREFIX_EVEN[:31]; found by
    # extending that pattern to a right-crucial permutation of length 32
    32: (8, 2, 0, 19, 29, 18, 3, 4, 7, 5, 1, 30, 31, 20, 6, 9, 21, 12, 10, 23, 26, 22, 13, 14,
         17, 15, 11, 27, 28, 24, 16, 25),
    34: (8, 2, 0, 21, 30, 20, 3, 4, 7, 5, 1, 31, 32, 22, 6, 9, 23, 12, 10, 25, 27, 24, 13, 14,
         18, 15, 11, 28, 29, 26, 17, 19, 33, 16),
    36: (27, 33, 35, 22, 21, 26, 32, 31, 28, 30, 34, 19, 12, 20, 29, 25, 11, 18, 24, 9, 7, 10,
         17, 16, 13, 15, 23, 4, 2, 5, 14, 8, 1, 3, 6, 0),
    40: (8, 2, 0, 20, 29, 19, 3, 4, 7, 5, 1, 30, 31, 21, 6, 9, 22, 12, 10, 24, 26, 23, 13, 14,
         17, 15, 11, 27, 28, 25, 16, 18, 34, 33, 32, 37, 39, 36, 35, 38),
    42: (8, 2, 0, 20, 29, 19, 3, 4, 7, 5, 1, 30, 31, 21, 6, 9, 22, 12, 10, 24, 26, 23, 13, 14,
         17, 15, 11, 27, 28, 25, 16, 18, 34, 33, 32, 39, 41, 38, 36, 37, 40, 35),
    44: (8, 2, 0, 20, 29, 19, 3, 4, 7, 5, 1, 30, 31, 21, 6, 9, 22, 12, 10, 24, 26, 23, 13, 14,
         17, 15, 11, 27, 28, 25, 16, 18, 34, 33, 32, 38, 42, 37, 35, 36, 41, 40, 39, 43),
    46: (8, 2, 0, 25, 34, 24, 3, 4, 7, 5, 1, 35, 36, 26, 6, 9, 27, 12, 10, 29, 31, 28, 13, 14,
         17, 15, 11, 32, 33, 30, 16, 23, 39, 38, 37, 40, 41, 22, 19, 20, 43, 42, 21, 44, 45, 18),
}


@dataclass(frozen=True)
class RegionLayout:
    """Value bands ``[r_i, r_{i+1})`` of a construction; ``boundaries[0] == 0``."""

    boundaries: tuple[int, ...]

    @classmethod
    def from_sizes(cls, sizes: Sequence[int]) -> "RegionLayout":
        return cls(tuple(itertools.accumulate(sizes, initial=0)))

    @property
    def sizes(self) -> tuple[int, ...]:
        b = self.boundaries
        return tuple(b[i + 1] - b[i] for i in range(len(b) - 1))

    @property
    def total(self) -> int:
        return self.boundaries[-1]

    def __getitem__(self, i: int) -> int:
        return self.boundaries[i]

    def region_of(self, value: int) -> int:
        for i in range(len(self.boundaries) - 1):
            if self.boundaries[i] <= value < self.boundaries[i + 1]:
                return i
        raise ValueError(value)


def hml_double(
    pi: Sequence[int],
    low_order: Optional[Sequence[int]] = None,
    high_order: Optional[Sequence[int]] = None,
) -> Permutation:
    """High-medium-low doubling of a square-free permutation of length m.

    Even positions carry ``pi`` shifted into the middle band, positions
    ``1 mod 4`` the low band ``[0, ceil(m/2))`` and positions ``3 mod 4`` the
    high band.  Each band is filled in increasing order unless
    ``low_order`` / ``high_order`` (permutations of the band) say otherwise.
    """
    if not is_square_free(pi):
        raise NotSquareFree(f"{tuple(pi)!r} contains a square")
    m = len(pi)
    low_count = (m + 1) // 2
    high_count = m // 2
    low_order = range(low_count) if low_order is None else low_order
    high_order = range(high_count) if high_order is None else high_order
    if sorted(low_order) != list(range(low_count)) or sorted(high_order) != list(range(high_count)):
        raise InvalidInput("band orders must permute their bands")
    lows = iter(low_order)
    highs = iter(high_order)
    out = []
    for i in range(2 * m):
        if i % 2 == 0:
            out.append(pi[i // 2] + low_count)
        elif i % 4 == 1:
            out.append(next(lows))
        else:
            out.append(next(highs) + m + low_count)
    return tuple(out)


def exists_bicrucial(n: int) -> bool:
    if n % 2:
        return n == 9 or n >= 13
    return n >= 32 and n != 38


def square_free_seeds(m: int, start: Optional[Sequence[int]] = None) -> Iterator[Permutation]:
    """Square-free permutations of length ``m`` whose first entries have pattern ``start``.

    Generated depth-first, appending the smallest admissible value first.
    """
    root = tuple(start) if start else ()
    if len(root) > m:
        raise InvalidInput("start pattern longer than m")
    if root and pattern_of(root) != root:
        raise InvalidInput(f"{root!r} is not a pattern")
    yield from Walker(WalkConfig(m, root=root, ascending=True)).leaves()


def seed_square_free(m: int, start: Optional[Sequence[int]] = None) -> Permutation:
    if m < 1:
        raise InvalidInput("m must be positive")
    for perm in square_free_seeds(m, start):
        return perm
    raise Unsatisfiable(f"no square-free permutation of length {m} starts with {start}")


def claim_pi(k: int, inner: Optional[Sequence[int]] = None) -> Permutation:
    """Square-free permutation of length ``k`` that begins up-down and ends with ``k - 1``.

    The first ``k - 1`` entries double ``inner`` (default: the first seed of
    length ``(k-1)/2``) starting on a medium entry followed by a high one:
    even positions medium, ``1 mod 4`` high, ``3 mod 4`` low.
    """
    if k < 5 or k % 4 != 1:
        raise BadLength(f"k must be >= 5 and 1 mod 4, got {k}")
    half = (k - 1) // 2
    inner = seed_square_free(half) if inner is None else tuple(inner)
    quarter = (k - 1) // 4
    highs = iter(range(quarter + half, k - 1))
    lows = iter(range(quarter))
    out = []
    for i in range(k - 1):
        if i % 2 == 0:
            out.append(inner[i // 2] + quarter)
        elif i % 4 == 1:
            out.append(next(highs))
        else:
            out.append(next(lows))
    out.append(k - 1)
    pi = tuple(out)
    if not is_square_free(pi):
        raise VerificationFailed(f"claim permutation {pi!r} has a square")
    return pi


# -- 8k+3 ---------------------------------------------------------------------


def layout_8k3(n: int) -> RegionLayout:
    m = (n - 21) // 2
    return RegionLayout.from_sizes((9, (m + 1) // 2, m, (m + 1) // 2, 11))


def assemble_8k3(n: int, pi: Sequence[int]) -> Permutation:
    """Prefix, high-medium-low middle over ``pi``, suffix; not verified."""
    m = (n - 21) // 2
    if len(pi) != m:
        raise InvalidInput(f"seed must have length {m}")
    r = layout_8k3(n)
    out = list(PREFIX_8K3)
    for i in range(2 * m + 1):
        if i % 4 == 0:
            out.append(r[3] + i // 4)
        elif i % 2 == 1:
            out.append(r[2] + pi[(i - 1) // 2])
        else:
            out.append(r[1] + (i - 2) // 4)
    out.extend(r[4] + v for v in SUFFIX_8K3)
    return tuple(out)


def build_8k3(n: int, pi: Optional[Sequence[int]] = None, attempts: int = 64) -> Permutation:
    """Bicrucial permutation of length ``n = 8k + 3``, ``k >= 3``.

    The seed is a square-free permutation of length ``(n - 21) / 2`` starting
    down-down.  Above length 44 any such seed works; below that seeds are
    tried in order until the result verifies.
    """
    if n % 8 != 3 or n < 27:
        raise BadLength(f"8k+3 construction needs n = 8k+3 with k >= 3, got {n}")
    m = (n - 21) // 2
    seeds = [tuple(pi)] if pi is not None else itertools.islice(square_free_seeds(m, (2, 1, 0)), attempts)
    for seed in seeds:
        sigma = assemble_8k3(n, seed)
        if is_bicrucial(sigma):
            return sigma
    raise VerificationFailed(f"8k+3 construction failed to verify for n = {n}")


# -- even n >= 48 ---------------------------------------------------------------


def even_parameters(n: int) -> tuple[int, int]:
    """``(k, suffix_length)`` with ``k = (n - 31 - l)/2`` equal to 1 mod 4 and ``k >= 5``."""
    if n % 2 or n < 48:
        raise BadLength(f"even construction needs even n >= 48, got {n}")
    for ell in EVEN_SUFFIXES:
        k = (n - 31 - ell) // 2
        if k % 4 == 1 and k >= 5:
            return k, ell
    raise BadLength(n)  # unreachable: the four k values are consecutive


def layout_even(n: int) -> RegionLayout:
    k, ell = even_parameters(n)
    top = sum(1 for region, _ in EVEN_SUFFIXES[ell] if region == 6)
    return RegionLayout.from_sizes(
        (32, (k - 1) // 2, 5 if ell == 13 else 0, k - 1, 2, (k + 1) // 2, top))


def assemble_even(n: int, pi: Sequence[int]) -> Permutation:
    k, ell = even_parameters(n)
    if len(pi) != k:
        raise InvalidInput(f"claim permutation must have length {k}")
    r = layout_even(n)
    out = list(PREFIX_EVEN)
    for i in range(2 * k - 1):
        if i % 4 == 0:
            out.append(r[5] + i // 4)
        elif i % 2 == 1:
            out.append(r[3] + pi[(i - 1) // 2])
        else:
            out.append(r[1] + (i - 2) // 4)
    out.extend(r[region] + offset for region, offset in EVEN_SUFFIXES[ell])
    return tuple(out)


def build_even(n: int, pi: Optional[Sequence[int]] = None, attempts: int = 64) -> Permutation:
    """Bicrucial permutation of even length ``n >= 48``."""
    k, _ = even_parameters(n)
    if pi is not None:
        candidates = [tuple(pi)]
    else:
        inners = itertools.islice(square_free_seeds((k - 1) // 2), attempts)
        candidates = (claim_pi(k, inner) for inner in inners)
    for candidate in candidates:
        sigma = assemble_even(n, candidate)
        if is_bicrucial(sigma):
            return sigma
    raise VerificationFailed(f"even construction failed to verify for n = {n}")


# -- small even lengths and search ------------------------------------------------


def witness_small_even(n: int) -> Permutation:
    if n == 38:
        raise NoWitness("there is no bicrucial permutation of length 38")
    try:
        return WITNESSES[n]
    except KeyError:
        raise NoWitness(f"no stored witness of length {n}") from None


def _walk_budgeted(cfg: WalkConfig, budget: Optional[int]) -> tuple[Optional[Permutation], int]:
    walker = Walker(cfg, budget=budget)
    try:
        for leaf in walker.leaves():
            if is_bicrucial(leaf):
                return leaf, walker.stats.nodes
    except BudgetExhausted:
        pass
    return None, walker.stats.nodes


def _nearby_constructions(n: int, reach: int = 8) -> list[Permutation]:
    out = []
    for m in sorted(range(n - reach, n + reach + 1), key=lambda m: (abs(m - n), m)):
        if m == n or m < 27 or not exists_bicrucial(m):
            continue
        if m % 8 == 3:
            out.append(build_8k3(m))
        elif m % 2 == 0:
            out.append(build_even(m) if m >= 48 else witness_small_even(m))
    return out


def search_bicrucial(
    n: int,
    budget: Optional[int] = 2_000_000,
    hints: Sequence[Sequence[int]] = (),
    hint_budget: int = 20_000,
    hint_depth: int = 12,
) -> Optional[Permutation]:
    """A bicrucial permutation of length ``n`` found by depth-first search.

    Each hint (a bicrucial permutation of another length) is tried first: the
    patterns of its prefixes, longest first, are completed to length ``n``
    with at most ``hint_budget`` nodes each.  The fallback walks the whole
    tree in ascending order and returns its first bicrucial leaf.  Returns
    None when that search space is exhausted and raises
    :class:`Unsupported` when ``budget`` nodes are used up first.
    """
    remaining = budget
    deciding = crucial_prefix_length(n)
    for hint in hints:
        top = min(len(hint), n) - 1
        for j in range(top, max(3, top - hint_depth), -1):
            step = hint_budget if remaining is None else min(hint_budget, remaining)
            if step <= 0:
                raise Unsupported(f"search budget exhausted for n = {n}")
            cfg = WalkConfig(n, root=pattern_of(hint[:j]),
                             lc_depth=deciding if deciding > j else None,
                             right_crucial=True, ascending=True)
            found, used = _walk_budgeted(cfg, step)
            if found is not None:
                return found
            if remaining is not None:
                remaining -= used
    cfg = WalkConfig(
        n,
        lc_depth=deciding,
        bound_cutoff=n + 1,
        right_crucial=True,
        ascending=True,
    )
    try:
        return next(Walker(cfg, budget=remaining).leaves(), None)
    except BudgetExhausted:
        raise Unsupported(f"search budget exhausted for n = {n}") from None


def construct_bicrucial(n: int, budget: Optional[int] = 2_000_000) -> Permutation:
    """Any bicrucial permutation of length ``n``; raises Infeasible / Unsupported."""
    if n < 1:
        raise InvalidInput("n must be positive")
    if not exists_bicrucial(n):
        raise Infeasible(f"no bicrucial permutation of length {n} exists")
    if n % 2 == 0:
        sigma = build_even(n) if n >= 48 else witness_small_even(n)
    elif n % 8 == 3 and n >= 27:
        sigma = build_8k3(n)
    else:
        hints = _nearby_constructions(n) if n >= 27 else ()
        sigma = search_bicrucial(n, budget, hints)
        if sigma is None:
            raise VerificationFailed(f"exhaustive search found nothing for n = {n}")
    if not is_bicrucial(sigma):
        raise VerificationFailed(f"result for n = {n} is not bicrucial")
    return sigma
