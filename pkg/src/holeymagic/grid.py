"""Holey grids, magic verification, diagonal analysis and MRX text I/O.

A holey grid is an m x n array whose cells are either empty or hold a
nonnegative integer.  Every other module produces or consumes these.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional, Tuple

from .errors import ParseError, ShapeError

Cell = Optional[int]

EMPTY_TOKEN = "."
_VALUE_RE = re.compile(r"(?:0|[1-9][0-9]*)\Z")


@dataclass(frozen=True)
class HoleyGrid:
    """Immutable rectangular array of optional nonnegative integers.

    Cell addressing is 0-based (row, col).  `cells` is a tuple of row
    tuples; `None` marks an empty cell.
    """

    rows: int
    cols: int
    cells: Tuple[Tuple[Cell, ...], ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ShapeError(f"grid must be at least 1x1, got {self.rows}x{self.cols}")
        if len(self.cells) != self.rows or any(len(row) != self.cols for row in self.cells):
            raise ShapeError("cells do not match the declared dimensions")
        for row in self.cells:
            for v in row:
                if v is None:
                    continue
                if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                    raise ValueError(f"cell values must be nonnegative integers, got {v!r}")

    @classmethod
    def from_rows(cls, rows_data) -> "HoleyGrid":
        """Build a grid from any iterable of row iterables."""
        cells = tuple(tuple(row) for row in rows_data)
        if not cells:
            raise ShapeError("grid must have at least one row")
        return cls(len(cells), len(cells[0]), cells)

    def filled(self) -> Iterator[Tuple[int, int, int]]:
        """Yield (row, col, value) for every filled cell in row-major order."""
        for i, row in enumerate(self.cells):
            for j, v in enumerate(row):
                if v is not None:
                    yield i, j, v


@dataclass(frozen=True)
class MagicSpec:
    """Shape and fill counts (m, n, r, s): m x n grid, r filled cells per
    row, s per column.  Requires m*r = n*s, 1 <= r <= n and 1 <= s <= m."""

    m: int
    n: int
    r: int
    s: int

    def __post_init__(self):
        if min(self.m, self.n, self.r, self.s) < 1:
            raise ShapeError(f"spec parameters must be positive: {self}")
        if self.m * self.r != self.n * self.s:
            raise ShapeError(f"m*r must equal n*s: {self.m}*{self.r} != {self.n}*{self.s}")
        if self.r > self.n or self.s > self.m:
            raise ShapeError(f"fill counts exceed dimensions: {self}")

    @property
    def total_cells(self) -> int:
        return self.m * self.r


class MagicConstants(NamedTuple):
    row_sum: Fraction
    col_sum: Fraction
    row_integral: bool
    col_integral: bool


def magic_constants(spec: MagicSpec) -> MagicConstants:
    """Exact rational row and column sums forced by the value set.

    The filled values are 0..mr-1, so the total is mr(mr-1)/2, each of the
    m rows must sum to r(mr-1)/2 and each of the n columns to s(mr-1)/2.
    """
    t = spec.total_cells
    row_sum = Fraction(spec.r * (t - 1), 2)
    col_sum = Fraction(spec.s * (t - 1), 2)
    return MagicConstants(row_sum, col_sum, row_sum.denominator == 1, col_sum.denominator == 1)


@dataclass(frozen=True)
class Violation:
    """One failed magic axiom; `index` is the offending row or column when
    the axiom is per-row or per-column."""

    kind: str
    index: Optional[int] = None

    def __str__(self):
        if self.index is None:
            return self.kind
        return f"{self.kind}({self.index})"


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    row_constant: Optional[int]
    col_constant: Optional[int]
    failures: Tuple[Violation, ...]


def verify(grid: HoleyGrid, spec: MagicSpec) -> VerificationReport:
    """Check every magic axiom of grid against spec.

    ok requires: r filled cells per row, s per column, filled values exactly
    {0..mr-1} each once, and all row and column sums hitting the constants
    from magic_constants.  row_constant/col_constant are reported whenever
    the observed sums agree with each other, even on a failing grid.
    """
    if (grid.rows, grid.cols) != (spec.m, spec.n):
        raise ShapeError(
            f"grid is {grid.rows}x{grid.cols} but spec wants {spec.m}x{spec.n}"
        )
    consts = magic_constants(spec)
    failures = []

    row_fill = [0] * spec.m
    col_fill = [0] * spec.n
    row_sums = [0] * spec.m
    col_sums = [0] * spec.n
    values = []
    for i, j, v in grid.filled():
        row_fill[i] += 1
        col_fill[j] += 1
        row_sums[i] += v
        col_sums[j] += v
        values.append(v)

    for i, count in enumerate(row_fill):
        if count != spec.r:
            failures.append(Violation("FillCountRow", i))
    for j, count in enumerate(col_fill):
        if count != spec.s:
            failures.append(Violation("FillCountCol", j))
    if sorted(values) != list(range(spec.total_cells)):
        failures.append(Violation("ValueMultiset"))
    for i, total in enumerate(row_sums):
        if total != consts.row_sum:
            failures.append(Violation("RowSum", i))
    for j, total in enumerate(col_sums):
        if total != consts.col_sum:
            failures.append(Violation("ColSum", j))

    row_constant = row_sums[0] if len(set(row_sums)) == 1 else None
    col_constant = col_sums[0] if len(set(col_sums)) == 1 else None
    return VerificationReport(not failures, row_constant, col_constant, tuple(failures))


def diagonal_support(grid: HoleyGrid) -> frozenset:
    """Diagonal indices (j-i) mod n carrying at least one filled cell.

    Only defined for square grids; diagonals are broken (they wrap around
    the right edge).
    """
    if grid.rows != grid.cols:
        raise ShapeError(f"diagonals need a square grid, got {grid.rows}x{grid.cols}")
    n = grid.cols
    return frozenset((j - i) % n for i, j, _ in grid.filled())


def is_consecutive_cyclic(diagonals, modulus: int) -> bool:
    """True iff the index set is one cyclically consecutive run."""
    k = len(diagonals)
    if k == 0 or k > modulus:
        return False
    if k == modulus:
        return True
    starts = sum(1 for d in diagonals if (d - 1) % modulus not in diagonals)
    return starts == 1


def cyclic_run_start(diagonals, modulus: int) -> int:
    """First index of the consecutive run; 0 for the full set."""
    if not is_consecutive_cyclic(diagonals, modulus):
        raise ValueError(f"not a consecutive cyclic run: {sorted(diagonals)}")
    if len(diagonals) == modulus:
        return 0
    return next(d for d in diagonals if (d - 1) % modulus not in diagonals)


def serialize(grid: HoleyGrid) -> str:
    """Render the grid in MRX text form (see parse for the grammar)."""
    lines = [f"{grid.rows} {grid.cols}"]
    for row in grid.cells:
        lines.append(" ".join(EMPTY_TOKEN if v is None else str(v) for v in row))
    return "\n".join(lines) + "\n"


def parse(text: str) -> HoleyGrid:
    """Parse MRX text: "<rows> <cols>" header, then one line per row of
    space-separated tokens, each "." or a canonical nonnegative decimal.
    Exactly one space between tokens, trailing newline required.

    Raises ParseError carrying the offending 1-based line number.
    """
    if not text.endswith("\n"):
        raise ParseError("missing trailing newline", max(1, text.count("\n") + 1))
    lines = text.split("\n")[:-1]
    if not lines:
        raise ParseError("empty input", 1)

    header = lines[0].split(" ")
    if len(header) != 2 or not all(_VALUE_RE.match(tok) for tok in header):
        raise ParseError(f"bad header {lines[0]!r}", 1)
    rows, cols = int(header[0]), int(header[1])
    if rows < 1 or cols < 1:
        raise ParseError("dimensions must be positive", 1)
    if len(lines) < rows + 1:
        raise ParseError(f"expected {rows} data lines, got {len(lines) - 1}", len(lines) + 1)
    if len(lines) > rows + 1:
        raise ParseError("content after last row", rows + 2)

    cells = []
    for i in range(rows):
        lineno = i + 2
        tokens = lines[i + 1].split(" ")
        if len(tokens) != cols:
            raise ParseError(f"expected {cols} tokens, got {len(tokens)}", lineno)
        row = []
        for tok in tokens:
            if tok == EMPTY_TOKEN:
                row.append(None)
            elif _VALUE_RE.match(tok):
                row.append(int(tok))
            else:
                raise ParseError(f"bad token {tok!r}", lineno)
        cells.append(tuple(row))
    return HoleyGrid(rows, cols, tuple(cells))
