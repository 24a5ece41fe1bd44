"""Left-, right- and bicrucial permutations."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

from .perm import (
    Permutation,
    append_value,
    format_permutation,
    is_square_free,
    left_kill_mask,
    prepend_value,
    right_kill_mask,
)

__all__ = [
    "CrucialReport", "is_right_crucial", "is_left_crucial", "is_bicrucial",
    "analyze", "crucial_prefix_length",
]


def _covers_all(mask: int, n: int) -> bool:
    return mask == (1 << (n + 1)) - 1


def is_right_crucial(perm: Sequence[int]) -> bool:
    """Square-free, and every right-extension contains a square."""
    return is_square_free(perm) and _covers_all(right_kill_mask(perm), len(perm))


def is_left_crucial(perm: Sequence[int]) -> bool:
    """Square-free, and every left-extension contains a square."""
    return is_square_free(perm) and _covers_all(left_kill_mask(perm), len(perm))


def is_bicrucial(perm: Sequence[int]) -> bool:
    if not is_square_free(perm):
        return False
    n = len(perm)
    return _covers_all(right_kill_mask(perm), n) and _covers_all(left_kill_mask(perm), n)


def crucial_prefix_length(n: int) -> int:
    """Length of the prefix that decides left-cruciality of a square-free length-``n`` permutation.

    A square created by prepending to an up-up-down-down permutation has
    length 4 or a multiple of 8 and fits in ``n + 1`` entries, so it only
    reaches the first ``S - 1`` entries, ``S`` being the largest such length.
    By symmetry the same number of trailing entries decides right-cruciality.
    """
    longest = max(4, (n + 1) // 8 * 8)
    return min(n, longest - 1)


def _first_missing(mask: int, n: int) -> Optional[int]:
    for x in range(n + 1):
        if not mask >> x & 1:
            return x
    return None


@dataclass(frozen=True)
class CrucialReport:
    subject: Permutation
    square_free: bool
    left_crucial: bool
    right_crucial: bool
    # (side, inserted value, extended permutation) of a square-free extension
    failing_extension: Optional[tuple[str, int, Permutation]] = None

    @property
    def bicrucial(self) -> bool:
        return self.left_crucial and self.right_crucial

    def to_dict(self) -> dict:
        failing = None
        if self.failing_extension is not None:
            side, value, extended = self.failing_extension
            failing = {"side": side, "value": value,
                       "permutation": format_permutation(extended)}
        return {
            "subject": format_permutation(self.subject),
            "square_free": self.square_free,
            "left_crucial": self.left_crucial,
            "right_crucial": self.right_crucial,
            "bicrucial": self.bicrucial,
            "failing_extension": failing,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def analyze(perm: Sequence[int]) -> CrucialReport:
    """Full crucial-ness report; the failing extension uses the left side first."""
    perm = tuple(perm)
    n = len(perm)
    if not is_square_free(perm):
        return CrucialReport(perm, False, False, False)
    left_x = _first_missing(left_kill_mask(perm), n)
    right_x = _first_missing(right_kill_mask(perm), n)
    failing = None
    if left_x is not None:
        failing = ("left", left_x, prepend_value(perm, left_x))
    elif right_x is not None:
        failing = ("right", right_x, append_value(perm, right_x))
    return CrucialReport(perm, True, left_x is None, right_x is None, failing)
