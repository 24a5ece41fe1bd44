"""Exact counts of square-free, left-crucial and bicrucial permutations.

Symmetry-reduced counts walk only one representative per symmetry class:

* even ``n``: exactly one of a square-free permutation and its reverse,
  complement and reverse-complement starts up-up, so the count is four
  times the up-up count;
* odd ``n``: the central-window canonical form keeps the least element of
  each orbit; orbits of size two are those fixed by reverse-complement, so
  the count is ``4C - 2D``;
* left-crucial: complement pairs up-starts with down-starts (reverse does
  not preserve left-cruciality), so the count is twice the up-start count.
"""

from __future__ import annotations

import enum
import json
import time
from dataclasses import dataclass
from typing import Callable, Optional

from .crucial import crucial_prefix_length, is_bicrucial, is_left_crucial
from .errors import CapExceeded, InvalidInput
from .perm import Permutation, is_square_free, right_kill_mask
from .search import Phase, SearchStats, WalkConfig, dfs_traverse, run_count

__all__ = [
    "Kind", "Method", "CountReport", "TABLE1", "BRUTE_FORCE_CAP",
    "count_brute", "count_square_free", "count_left_crucial", "count_bicrucial",
    "count", "count_rev_eq_comp",
]

BRUTE_FORCE_CAP = 11


class Kind(enum.Enum):
    SQUARE_FREE = "square-free"
    LEFT_CRUCIAL = "left-crucial"
    BICRUCIAL = "bicrucial"


class Method(enum.Enum):
    SYMMETRY_REDUCED = "symmetry-reduced"
    BRUTE_FORCE = "brute-force"


# (square-free, left-crucial, bicrucial) for n = 1..23
TABLE1: dict[int, tuple[int, int, int]] = {
    1: (1, 0, 0),
    2: (2, 0, 0),
    3: (6, 0, 0),
    4: (12, 0, 0),
    5: (34, 0, 0),
    6: (104, 0, 0),
    7: (406, 60, 0),
    8: (1112, 140, 0),
    9: (3980, 518, 54),
    10: (15216, 1444, 0),
    11: (68034, 8556, 0),
    12: (312048, 31992, 0),
    13: (1625968, 220456, 69856),
    14: (8771376, 984208, 0),
    15: (53270068, 7453080, 2930016),
    16: (319218912, 39692800, 0),
    17: (2135312542, 289981136, 40654860),
    18: (14420106264, 1467791790, 0),
    19: (109051882344, 14316379108, 162190472),
    20: (815868128288, 86001855074, 0),
    21: (6772099860398, 949804475890, 312348610684),
    22: (56501841264216, 6494842788046, 0),
    23: (519359404861294, 73636377696714, 29202730580288),
}


def _predicate(kind: Kind) -> Callable[[Permutation], bool]:
    return {
        Kind.SQUARE_FREE: is_square_free,
        Kind.LEFT_CRUCIAL: is_left_crucial,
        Kind.BICRUCIAL: is_bicrucial,
    }[kind]


@dataclass(frozen=True)
class CountReport:
    kind: Kind
    n: int
    count: int
    method: Method
    reduced_count: Optional[int] = None
    # representatives fixed by reverse-complement (orbits of size two)
    correction: Optional[int] = None
    wall_time: float = 0.0
    stats: Optional[SearchStats] = None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "n": self.n,
            "count": self.count,
            "method": self.method.value,
            "reduced_count": self.reduced_count,
            "correction": self.correction,
            "wall_time": round(self.wall_time, 6),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def count_brute(kind: Kind, n: int, cap: int = BRUTE_FORCE_CAP) -> CountReport:
    """Walk every square-free permutation of length ``n`` and test ``kind`` on each."""
    if n < 1:
        raise InvalidInput("n must be positive")
    if n > cap:
        raise CapExceeded(f"brute force is capped at n = {cap}, got {n}")
    check = _predicate(kind)
    start = time.perf_counter()
    hits = 0

    def visit(perm):
        nonlocal hits
        if len(perm) == n and check(tuple(perm)):
            hits += 1

    # a node is pruned once its newest entry closes a square
    def has_square(perm):
        return len(perm) >= 4 and right_kill_mask(perm[:-1]) >> perm[-1] & 1 == 1

    stats = dfs_traverse(n, pruner=has_square, visitor=visit)
    return CountReport(kind, n, hits, Method.BRUTE_FORCE,
                       wall_time=time.perf_counter() - start, stats=stats)


def _reduced(kind: Kind, n: int, cfg: WalkConfig, threads: int, start: float) -> CountReport:
    reduced, fixed, stats = run_count(cfg, threads=threads)
    if kind is Kind.LEFT_CRUCIAL:
        total, correction = 2 * reduced, None
    elif n % 2 == 0:
        # no square-free permutation of even length >= 4 is fixed by
        # reverse-complement (see count_rev_eq_comp), so every orbit has size 4
        total, correction = 4 * reduced, 0
    else:
        total, correction = 4 * reduced - 2 * fixed, fixed
    return CountReport(kind, n, total, Method.SYMMETRY_REDUCED, reduced, correction,
                       time.perf_counter() - start, stats)


def _config(kind: Kind, n: int) -> WalkConfig:
    lc_depth = None if kind is Kind.SQUARE_FREE else crucial_prefix_length(n)
    right = kind is Kind.BICRUCIAL
    if kind is Kind.LEFT_CRUCIAL:
        return WalkConfig(n, root=Phase.UP.root, lc_depth=lc_depth)
    if n % 2 == 0:
        return WalkConfig(n, root=Phase.UP_UP.root, lc_depth=lc_depth, right_crucial=right)
    return WalkConfig(n, lc_depth=lc_depth, central=True, right_crucial=right)


def count(kind: Kind, n: int, threads: int = 1) -> CountReport:
    """Symmetry-reduced count; lengths below 4 are too short for the reductions."""
    if n < 1:
        raise InvalidInput("n must be positive")
    if n < 4:
        return count_brute(kind, n)
    return _reduced(kind, n, _config(kind, n), threads, time.perf_counter())


def count_square_free(n: int, threads: int = 1) -> CountReport:
    return count(Kind.SQUARE_FREE, n, threads)


def count_left_crucial(n: int, threads: int = 1) -> CountReport:
    return count(Kind.LEFT_CRUCIAL, n, threads)


def count_bicrucial(n: int, threads: int = 1) -> CountReport:
    return count(Kind.BICRUCIAL, n, threads)


def count_rev_eq_comp(kind: Kind, n: int) -> int:
    """Number of permutations of ``kind`` whose reverse equals their complement.

    Such a permutation satisfies ``s[n-1-i] = n-1-s[i]``, so its first
    ``ceil(n/2)`` entries (a set containing at most one of ``v`` and
    ``n-1-v``) determine it.
    """
    if n < 1:
        raise InvalidInput("n must be positive")
    check = _predicate(kind)
    half = (n + 1) // 2
    hits = 0
    head: list[int] = []
    used = [False] * n

    def extend():
        nonlocal hits
        if len(head) == half:
            perm = head + [n - 1 - v for v in reversed(head[: n // 2])]
            if check(tuple(perm)):
                hits += 1
            return
        for v in range(n):
            if used[v] or used[n - 1 - v]:
                continue
            if n % 2 == 1 and len(head) < half - 1 and v == n // 2:
                continue  # the middle value must sit in the middle
            head.append(v)
            used[v] = True
            if is_square_free(head):
                extend()
            head.pop()
            used[v] = False

    extend()
    return hits
