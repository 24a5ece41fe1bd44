"""Exhaustive depth-first search over square-free permutations.

Two traversals live here.  :func:`dfs_traverse` is the general one: it
walks every permutation tree node with the in-place "append the maximum,
then swap neighbouring values" child scheme and asks a caller-supplied
pruner about each node.  :class:`Walker` is the specialised engine used for
counting and for the left-crucial pipeline; it only ever materialises
square-free children, using :func:`~bicrucial.perm.right_kill_mask`.
"""

from __future__ import annotations

import enum
import math
import os
import time
from dataclasses import dataclass, field, fields
from multiprocessing import get_context
from typing import Callable, Iterator, Optional, Sequence

from .crucial import crucial_prefix_length
from .errors import InvalidInput
from .perm import (
    Permutation,
    append_value,
    is_square_free,
    left_kill_mask,
    order_isomorphic_truncated,
    pattern_of,
    prepend_value,
    right_kill_mask,
)

__all__ = [
    "Phase", "SearchStats", "SearchNode", "BoundOutcome", "WalkConfig", "Walker",
    "dfs_traverse", "partial_square_k", "bound_outcome", "left_crucial_lower_bound",
    "enumerate_left_crucial", "suffix_dedupe_extend", "search_bicrucial_nonexistence",
    "NonexistenceResult", "pack_pattern", "unpack_pattern", "default_threads",
    "run_count",
]

THREADS_ENV = "BICRUCIAL_THREADS"


def default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else os.cpu_count() or 1


class Phase(enum.Enum):
    """Restriction on how a permutation starts."""

    UP_UP = "up-up"
    UP = "up"
    ANY = "any"

    @property
    def root(self) -> Permutation:
        return {Phase.UP_UP: (0, 1, 2), Phase.UP: (0, 1), Phase.ANY: ()}[self]

    def admits(self, perm: Sequence[int]) -> bool:
        root = self.root
        return len(perm) >= len(root) and pattern_of(perm[:len(root)]) == root


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    pruned_square: int = 0
    pruned_bound: int = 0
    pruned_prefix: int = 0
    pruned_symmetry: int = 0
    pruned_other: int = 0
    wall_time: float = 0.0

    def __iadd__(self, other: "SearchStats") -> "SearchStats":
        for f in fields(self):
            setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))
        return self

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass
class SearchNode:
    """Mutable cursor of :func:`dfs_traverse`.

    ``perm[i]`` and ``pos[v]`` are mutually inverse; ``counters[d]`` is the
    index of the child currently visited below the node of length ``d``.
    """

    perm: list[int] = field(default_factory=list)
    pos: list[int] = field(default_factory=list)
    counters: list[int] = field(default_factory=list)

    def push_max(self) -> None:
        n = len(self.perm)
        self.perm.append(n)
        self.pos.append(n)
        self.counters.append(0)

    def next_sibling(self) -> bool:
        """Step to the next child of the parent; False once children are exhausted."""
        n = len(self.perm) - 1
        c = self.counters[-1]
        if c >= n:
            return False
        hi, lo = n - c, n - c - 1
        i, j = self.pos[hi], self.pos[lo]
        self.perm[i], self.perm[j] = lo, hi
        self.pos[hi], self.pos[lo] = j, i
        self.counters[-1] = c + 1
        return True

    def pop(self) -> None:
        # the last child ends in 0, so every other entry is >= 1
        self.perm.pop()
        self.perm[:] = [v - 1 for v in self.perm]
        del self.pos[0]
        self.counters.pop()


def dfs_traverse(
    max_len: int,
    pruner: Optional[Callable[[Sequence[int]], bool]] = None,
    visitor: Optional[Callable[[Sequence[int]], None]] = None,
) -> SearchStats:
    """Visit every unpruned permutation of length 1..max_len.

    Children of a node of length ``n`` are produced by appending ``n`` and
    then repeatedly swapping the values ``n - i`` and ``n - i - 1``; after the
    last child the final entry (0) is dropped and everything decremented.
    ``pruner(perm)`` returning True discards the node and its subtree.
    ``visitor`` receives the live working list and must copy it to keep it.
    """
    if max_len < 1:
        raise InvalidInput("max_len must be at least 1")
    stats = SearchStats()
    start = time.perf_counter()
    node = SearchNode()
    node.push_max()
    while True:
        if pruner is not None and pruner(node.perm):
            stats.pruned_other += 1
            descend = False
        else:
            stats.nodes += 1
            if visitor is not None:
                visitor(node.perm)
            descend = len(node.perm) < max_len
        if descend:
            node.push_max()
            continue
        while node.counters and not node.next_sibling():
            node.pop()
        if not node.counters:
            break
    stats.wall_time = time.perf_counter() - start
    return stats


# -- the left-crucial length lower bound ---------------------------------------


def partial_square_k(extended: Sequence[int]) -> Optional[int]:
    """Smallest multiple of 4, ``k``, where a square starting at 0 could still complete.

    ``extended`` has length ``n + 1``; ``k`` ranges over ``(n+1)/2 < k <= n``
    and the two windows ``extended[:k]`` and ``extended[k:]`` are compared
    with the longer one cut to the shorter's length.
    """
    size = len(extended)
    n = size - 1
    k = (size // 2 // 4 + 1) * 4
    while k <= n:
        if 2 * k > size and order_isomorphic_truncated(extended[:k], extended[k:]):
            return k
        k += 4
    return None


class PrependKind(enum.Enum):
    HAS_SQUARE = "has-square"
    PARTIAL = "partial-square"
    NO_PARTIAL = "no-partial"


@dataclass(frozen=True)
class BoundOutcome:
    # per prepended value: (kind, k or None)
    outcomes: tuple[tuple[PrependKind, Optional[int]], ...]
    bound: int

    @property
    def no_partial_count(self) -> int:
        return sum(1 for kind, _ in self.outcomes if kind is PrependKind.NO_PARTIAL)


def bound_outcome(perm: Sequence[int], killed: Optional[int] = None) -> BoundOutcome:
    """Classify every prepended value and aggregate the left-crucial lower bound."""
    n = len(perm)
    if n < 3:
        raise InvalidInput("the bound needs a permutation of length >= 3")
    if killed is None:
        if not is_square_free(perm):
            raise InvalidInput(f"{tuple(perm)!r} is not square-free")
        killed = left_kill_mask(perm)
    outcomes = []
    best = 0
    t = 0
    for x in range(n + 1):
        if killed >> x & 1:
            outcomes.append((PrependKind.HAS_SQUARE, None))
            continue
        k = partial_square_k(prepend_value(perm, x))
        if k is None:
            t += 1
            outcomes.append((PrependKind.NO_PARTIAL, None))
        else:
            best = max(best, 2 * k - 1)
            outcomes.append((PrependKind.PARTIAL, k))
    if t:
        m = 4 * math.ceil((n + 1) / 4)
        best = max(best, 2 * m + 8 * (t - 1) - 1)
    return BoundOutcome(tuple(outcomes), best)


def left_crucial_lower_bound(perm: Sequence[int]) -> int:
    """Lower bound on the length of a left-crucial permutation starting with pattern ``perm``.

    >>> left_crucial_lower_bound((0, 4, 5, 2, 1, 3))
    23
    """
    return bound_outcome(perm).bound


# -- the fast walker -----------------------------------------------------------

R_BIT, C_BIT, RC_BIT = 1, 2, 4


def _bits(mask: int, ascending: bool) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out if ascending else out[::-1]


@dataclass(frozen=True)
class WalkConfig:
    """What the walker enumerates: square-free permutations of ``length`` below ``root``.

    ``lc_depth``: the prefix of that length must be left-crucial.
    ``bound_cutoff``: prune prefixes whose left-crucial lower bound reaches it.
    ``central``: keep only the least element of each reverse/complement orbit
    (odd ``length`` only), tracked by comparing centred windows.
    ``right_crucial``: leaves must be right-crucial.
    """

    length: int
    root: Permutation = ()
    lc_depth: Optional[int] = None
    bound_cutoff: Optional[int] = None
    central: bool = False
    right_crucial: bool = False
    ascending: bool = False


class Walker:
    def __init__(self, cfg: WalkConfig, stats: Optional[SearchStats] = None,
                 budget: Optional[int] = None):
        if cfg.central and cfg.length % 2 == 0:
            raise InvalidInput("central-window symmetry breaking needs an odd length")
        self.cfg = cfg
        self.stats = stats if stats is not None else SearchStats()
        self.budget = budget
        self.centre = (cfg.length - 1) // 2

    def initial_tied(self) -> int:
        return R_BIT | C_BIT | RC_BIT if self.cfg.central else 0

    def admit(self, p: Permutation, tied: int) -> Optional[int]:
        """Run the per-node checks; return the updated tie set, or None to prune."""
        cfg = self.cfg
        n = len(p)
        if cfg.lc_depth == n and left_kill_mask(p) != (1 << (n + 1)) - 1:
            self.stats.pruned_prefix += 1
            return None
        if cfg.bound_cutoff is not None and 3 <= n < cfg.length:
            if bound_outcome(p, left_kill_mask(p)).bound >= cfg.bound_cutoff:
                self.stats.pruned_bound += 1
                return None
        if tied and n > self.centre:
            tied = self._window_check(p, n, tied)
            if tied is None:
                self.stats.pruned_symmetry += 1
                return None
        if n == cfg.length and cfg.right_crucial and right_kill_mask(p) != (1 << (n + 1)) - 1:
            self.stats.pruned_other += 1
            return None
        return tied

    def _window_check(self, p: Permutation, n: int, tied: int) -> Optional[int]:
        # window centred on index (length-1)/2, grown by one entry per side
        lo = 2 * self.centre + 1 - n
        win = pattern_of(p[lo:n])
        top = len(win) - 1
        images = (
            (R_BIT, win[::-1]),
            (C_BIT, tuple(top - v for v in win)),
            (RC_BIT, tuple(top - v for v in reversed(win))),
        )
        for bit, image in images:
            if tied & bit:
                if image < win:
                    return None
                if image > win:
                    tied &= ~bit
        return tied

    def subtree(self, p: Permutation, tied: int,
                stop: Optional[int] = None) -> Iterator[tuple[Permutation, int]]:
        """Yield admitted nodes of length ``stop`` (default: the full length) below ``p``."""
        cfg = self.cfg
        target = cfg.length if stop is None else stop
        stats = self.stats
        stack = [(p, tied)]
        while stack:
            q, t = stack.pop()
            n = len(q)
            if n == target:
                if stop is None:
                    stats.leaves += 1
                yield q, t
                continue
            mask = right_kill_mask(q)
            stats.pruned_square += mask.bit_count()
            alive = ((1 << (n + 1)) - 1) & ~mask
            children = []
            for x in _bits(alive, cfg.ascending):
                child = append_value(q, x)
                ct = self.admit(child, t)
                if ct is not None:
                    children.append((child, ct))
            stats.nodes += len(children)
            if self.budget is not None and stats.nodes > self.budget:
                raise BudgetExhausted(stats.nodes)
            stack.extend(reversed(children))

    def count_subtree(self, p: Permutation, tied: int) -> tuple[int, int]:
        """Count admitted leaves below ``p``; also those fixed by reverse-complement."""
        cfg = self.cfg
        plain_last_level = not (cfg.central or cfg.right_crucial or cfg.lc_depth == cfg.length)
        if plain_last_level and cfg.length - len(p) >= 1:
            return self._count_fast(p), 0
        total = fixed = 0
        for _, t in self.subtree(p, tied):
            total += 1
            if t & RC_BIT:
                fixed += 1
        return total, fixed

    def _count_fast(self, p: Permutation) -> int:
        # leaves need no check of their own: count live children of the last level
        target = self.cfg.length
        stats = self.stats
        total = 0
        stack = [p]
        while stack:
            q = stack.pop()
            n = len(q)
            mask = right_kill_mask(q)
            alive = ((1 << (n + 1)) - 1) & ~mask
            if n == target - 1:
                total += alive.bit_count()
                continue
            stats.pruned_square += mask.bit_count()
            for x in _bits(alive, True):
                child = append_value(q, x)
                if self.admit(child, 0) is not None:
                    stats.nodes += 1
                    stack.append(child)
        stats.leaves += total
        return total

    def roots(self) -> list[tuple[Permutation, int]]:
        root = self.cfg.root
        if len(root) > self.cfg.length or not is_square_free(root):
            return []
        # the root's own prefixes are fixed; only the root itself is checked
        tied = self.initial_tied()
        for n in range(1, len(root) + 1):
            if tied and n > self.centre:
                tied = self._window_check(root[:n], n, tied)
                if tied is None:
                    return []
        t = self.admit(root, tied) if root else tied
        return [] if t is None else [(root, t)]

    def frontier(self, depth: int) -> list[tuple[Permutation, int]]:
        """Admitted nodes of length ``depth``, or whole subtrees' leaves if shallower."""
        out = []
        for p, t in self.roots():
            if len(p) >= depth:
                out.append((p, t))
            else:
                out.extend(self.subtree(p, t, stop=min(depth, self.cfg.length)))
        return out

    def leaves(self) -> Iterator[Permutation]:
        for p, t in self.roots():
            for leaf, _ in self.subtree(p, t):
                yield leaf


class BudgetExhausted(Exception):
    pass


def _count_chunk(args):
    cfg, items = args
    stats = SearchStats()
    walker = Walker(cfg, stats)
    total = fixed = 0
    for p, t in items:
        a, b = walker.count_subtree(p, t)
        total += a
        fixed += b
    return total, fixed, stats


def run_count(cfg: WalkConfig, threads: int = 1, split_depth: int = 6) -> tuple[int, int, SearchStats]:
    """Count leaves of ``cfg``; returns ``(count, rc_fixed_count, stats)``.

    With ``threads > 1`` the tree is cut at ``split_depth`` and the frontier
    subtrees are counted in worker processes; counts merge by addition.
    """
    start = time.perf_counter()
    stats = SearchStats()
    walker = Walker(cfg, stats)
    if threads <= 1 or cfg.length <= split_depth:
        total = fixed = 0
        for p, t in walker.roots():
            a, b = walker.count_subtree(p, t)
            total += a
            fixed += b
    else:
        items = walker.frontier(split_depth)
        chunks = [(cfg, items[i::threads * 4]) for i in range(threads * 4)]
        with get_context("fork").Pool(threads) as pool:
            results = pool.map(_count_chunk, chunks)
        total = sum(r[0] for r in results)
        fixed = sum(r[1] for r in results)
        for r in results:
            stats += r[2]
    stats.wall_time = time.perf_counter() - start
    return total, fixed, stats


# -- left-crucial enumeration and the suffix pipeline ----------------------------


def enumerate_left_crucial(
    length: int,
    phase: Phase = Phase.ANY,
    use_bound: bool = True,
    cutoff: Optional[int] = None,
    stats: Optional[SearchStats] = None,
) -> Iterator[Permutation]:
    """Yield every left-crucial permutation of ``length`` whose start matches ``phase``.

    Square-free prefixes are grown one entry at a time.  A prefix is dropped
    when its left-crucial lower bound reaches ``cutoff`` (default
    ``length + 1``), or when it reaches the length that decides left-cruciality
    (see :func:`~bicrucial.crucial.crucial_prefix_length`) without being
    left-crucial itself.
    """
    if length < 4:
        raise InvalidInput("left-crucial enumeration needs length >= 4")
    cfg = WalkConfig(
        length,
        root=phase.root,
        lc_depth=crucial_prefix_length(length),
        bound_cutoff=(cutoff if cutoff is not None else length + 1) if use_bound else None,
    )
    yield from Walker(cfg, stats).leaves()


def pack_pattern(pattern: Sequence[int]) -> int:
    """Pack a pattern into one integer: a nibble per entry up to length 16, else a byte."""
    width = 4 if len(pattern) <= 16 else 8
    code = 0
    for v in pattern:
        code = (code << width) | v
    return code


def unpack_pattern(code: int, length: int) -> Permutation:
    width = 4 if length <= 16 else 8
    out = []
    for _ in range(length):
        out.append(code & ((1 << width) - 1))
        code >>= width
    return tuple(reversed(out))


@dataclass
class SuffixResult:
    unique_suffix_count: int
    right_crucial_extension_count: int
    extensions: list[Permutation]
    stats: SearchStats


def suffix_dedupe_extend(
    source_len: int,
    drop: int,
    target_len: int,
    phase: Phase = Phase.ANY,
    keep: int = 100,
    budget: Optional[int] = None,
) -> SuffixResult:
    """Drop the first ``drop`` entries of every left-crucial permutation of ``source_len``,
    deduplicate the remaining suffix patterns, and count right-crucial square-free
    extensions of each suffix to length ``target_len - drop``.

    Up to ``keep`` of the extensions found are returned for inspection.
    """
    if not 0 <= drop < source_len <= target_len:
        raise InvalidInput("need 0 <= drop < source_len <= target_len")
    start = time.perf_counter()
    stats = SearchStats()
    suffix_len = source_len - drop
    seen: set[int] = set()
    for perm in enumerate_left_crucial(source_len, phase, stats=stats):
        seen.add(pack_pattern(pattern_of(perm[drop:])))
    extensions: list[Permutation] = []
    found = 0
    walker_stats = SearchStats()
    for code in sorted(seen):
        suffix = unpack_pattern(code, suffix_len)
        cfg = WalkConfig(target_len - drop, root=suffix, right_crucial=True)
        walker = Walker(cfg, walker_stats, budget=budget)
        for leaf in walker.leaves():
            found += 1
            if len(extensions) < keep:
                extensions.append(leaf)
    stats += walker_stats
    stats.wall_time = time.perf_counter() - start
    return SuffixResult(len(seen), found, extensions, stats)


def normalized_bicrucial(n: int, stats: Optional[SearchStats] = None,
                         budget: Optional[int] = None) -> Iterator[Permutation]:
    """Bicrucial permutations of length ``n`` in symmetry-normalised form.

    Even ``n``: exactly one of each permutation's reverse/complement images
    starts up-up, so only those are generated.  Odd ``n``: only the
    complement is used, so the permutations starting up are generated.
    """
    phase = Phase.UP_UP if n % 2 == 0 else Phase.UP
    cfg = WalkConfig(n, root=phase.root, lc_depth=crucial_prefix_length(n), right_crucial=True)
    yield from Walker(cfg, stats, budget=budget).leaves()


class Verdict(enum.Enum):
    VERIFIED = "verified"      # exhaustive search found no bicrucial permutation
    WITNESS = "witness"
    EXHAUSTED = "exhausted"    # node budget ran out first


@dataclass
class NonexistenceResult:
    length: int
    verdict: Verdict
    witness: Optional[Permutation]
    source_len: int
    drop: int
    unique_suffixes: int
    suffix_extensions: int
    stats: SearchStats

    def to_dict(self) -> dict:
        return {
            "length": self.length,
            "verdict": self.verdict.value,
            "witness": None if self.witness is None else ",".join(map(str, self.witness)),
            "source_len": self.source_len,
            "drop": self.drop,
            "unique_suffixes": self.unique_suffixes,
            "suffix_extensions": self.suffix_extensions,
            "stats": self.stats.to_dict(),
        }


def pipeline_parameters(n: int) -> tuple[int, int]:
    """Default ``(source_len, drop)`` for the suffix pipeline at length ``n``.

    The last ``n - drop`` entries must still decide right-cruciality, and two
    entries beyond the deciding prefix are generated before dropping (for
    ``n = 38`` this gives the 33 / 7 split).
    """
    deciding = crucial_prefix_length(n)
    drop = n - deciding
    source = min(n, deciding + 2)
    if source <= drop:
        source = drop + 1
    return source, drop


def search_bicrucial_nonexistence(n: int, budget: Optional[int] = None) -> NonexistenceResult:
    """Decide by exhaustive search whether a bicrucial permutation of length ``n`` exists.

    A bicrucial permutation (after normalising by symmetry) has a left-crucial
    prefix, and after dropping its first entries a right-crucial remainder.
    The suffix pipeline finds all candidate remainders; if there are none the
    answer is "none exist".  Otherwise an exact search returns a witness.
    """
    if n < 4:
        raise InvalidInput("n must be at least 4")
    phase = Phase.UP_UP if n % 2 == 0 else Phase.UP
    source, drop = pipeline_parameters(n)
    start = time.perf_counter()
    try:
        res = suffix_dedupe_extend(source, drop, n, phase, keep=0, budget=budget)
        stats = res.stats
        verdict, witness = Verdict.VERIFIED, None
        if res.right_crucial_extension_count:
            exact_stats = SearchStats()
            witness = next(normalized_bicrucial(n, exact_stats, budget=budget), None)
            stats += exact_stats
            if witness is not None:
                verdict = Verdict.WITNESS
    except BudgetExhausted:
        return NonexistenceResult(n, Verdict.EXHAUSTED, None, source, drop, 0, 0, SearchStats())
    stats.wall_time = time.perf_counter() - start
    return NonexistenceResult(n, verdict, witness, source, drop, res.unique_suffix_count,
                              res.right_crucial_extension_count, stats)
