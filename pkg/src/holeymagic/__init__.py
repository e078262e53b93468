"""Magic rectangles with empty cells.

Construction of MR(m,n;r,s) grids from their parameter families,
verification of the magic properties, existence decisions, ingredient
search with a persistent cache, and an independent brute-force oracle.
"""

from . import oracle
from .construct import (
    DiagonalBlock,
    NmssResult,
    block_set,
    five_case,
    nmss,
    product,
    realize,
    stacked,
    two_per_column,
)
from .errors import (
    BadIngredient,
    CacheError,
    CorruptCache,
    HoleyMagicError,
    NotConstructible,
    ParityError,
    ParseError,
    SearchBudgetExceeded,
    ShapeError,
)
from .existence import Decision, decide, necessary_conditions
from .grid import (
    HoleyGrid,
    MagicConstants,
    MagicSpec,
    VerificationReport,
    Violation,
    cyclic_run_start,
    diagonal_support,
    is_consecutive_cyclic,
    magic_constants,
    parse,
    serialize,
    verify,
)
from .ingredients import (
    DEFAULT_BUDGET,
    DiagonalProfile,
    IngredientCache,
    classical_rectangle,
    magic_rectangle_set,
    magic_square_holes,
    profile_satisfied,
)
from .kotzig import KotzigArray, base_pair, base_triple, kotzig
from .oracle import EnumerationResult, exists_brute

__version__ = "0.1.0"

__all__ = [
    "BadIngredient",
    "CacheError",
    "CorruptCache",
    "DEFAULT_BUDGET",
    "Decision",
    "DiagonalBlock",
    "DiagonalProfile",
    "EnumerationResult",
    "HoleyGrid",
    "HoleyMagicError",
    "IngredientCache",
    "KotzigArray",
    "MagicConstants",
    "MagicSpec",
    "NmssResult",
    "NotConstructible",
    "ParityError",
    "ParseError",
    "SearchBudgetExceeded",
    "ShapeError",
    "VerificationReport",
    "Violation",
    "base_pair",
    "base_triple",
    "block_set",
    "classical_rectangle",
    "decide",
    "cyclic_run_start",
    "diagonal_support",
    "exists_brute",
    "five_case",
    "is_consecutive_cyclic",
    "kotzig",
    "magic_constants",
    "magic_rectangle_set",
    "magic_square_holes",
    "necessary_conditions",
    "nmss",
    "oracle",
    "parse",
    "product",
    "profile_satisfied",
    "realize",
    "serialize",
    "stacked",
    "two_per_column",
    "verify",
]
