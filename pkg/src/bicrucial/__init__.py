"""Squares in permutations: crucial and bicrucial permutations, constructions and counts."""

from .construct import construct_bicrucial, exists_bicrucial
from .counting import CountReport, Kind, count_bicrucial, count_left_crucial, count_square_free
from .crucial import CrucialReport, analyze, is_bicrucial, is_left_crucial, is_right_crucial
from .errors import BicrucialError, Infeasible, InvalidInput, Unsupported
from .perm import (
    Permutation,
    SquareLocation,
    find_square,
    format_permutation,
    is_square_free,
    parse_permutation,
    pattern_of,
)

__version__ = "0.1.0"

__all__ = [
    "construct_bicrucial", "exists_bicrucial", "CountReport", "Kind", "count_bicrucial",
    "count_left_crucial", "count_square_free", "CrucialReport", "analyze", "is_bicrucial",
    "is_left_crucial", "is_right_crucial", "BicrucialError", "Infeasible", "InvalidInput",
    "Unsupported", "Permutation", "SquareLocation", "find_square", "format_permutation",
    "is_square_free", "parse_permutation", "pattern_of",
]
