"""Deterministic constructions of magic rectangles with empty cells.

Each operation turns parameters (plus pre-built ingredient grids where
needed) into a grid that passes verify for its declared spec.  Ingredients
are re-validated here even when they come from the trusted catalog.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from . import ingredients
from .errors import BadIngredient, NotConstructible, ShapeError
from .grid import (
    HoleyGrid,
    MagicSpec,
    cyclic_run_start,
    diagonal_support,
    is_consecutive_cyclic,
    verify,
)
from .ingredients import DiagonalProfile
from .kotzig import kotzig


@dataclass(frozen=True)
class DiagonalBlock:
    """Contents of one labeled diagonal of one subsquare: `values[p]` is the
    entry in row p (at column (p + diagonal) mod m)."""

    square_index: int
    diagonal_label: int
    values: Tuple[int, ...]


@dataclass(frozen=True)
class NmssResult:
    """t holey magic squares jointly holding 0..mst-1, every row and column
    of every square summing to `constant`."""

    squares: Tuple[HoleyGrid, ...]
    constant: int


def _require(grid: HoleyGrid, spec: MagicSpec, what: str) -> None:
    try:
        report = verify(grid, spec)
    except ShapeError as exc:
        raise BadIngredient(f"{what}: {exc}") from exc
    if not report.ok:
        tags = " ".join(str(v) for v in report.failures[:4])
        raise BadIngredient(f"{what} fails verification for {spec}: {tags}")


def _require_ms(square: HoleyGrid, m: int, s: int) -> frozenset:
    """Validate an s-diagonal MS(m;s) ingredient; return its support."""
    _require(square, MagicSpec(m, m, s, s), f"MS({m};{s}) ingredient")
    support = diagonal_support(square)
    if len(support) != s or not is_consecutive_cyclic(support, m):
        raise BadIngredient(
            f"MS({m};{s}) ingredient is not {s}-diagonal: support {sorted(support)}"
        )
    return support


def _canonical_labels(support: frozenset, m: int) -> List[int]:
    """Diagonal index for each label 0..s-1, walking down from the top of
    the consecutive run (so label i sits on diagonal run_start+s-1-i)."""
    start = cyclic_run_start(support, m)
    s = len(support)
    return [(start + s - 1 - i) % m for i in range(s)]


def two_per_column(m: int, k: int) -> HoleyGrid:
    """MR(m, km; 2k, 2): k subsquares, two filled diagonals each.

    The k even and k odd cases fill the subsquare diagonals with different
    value ranges; row indices wrap modulo m.
    """
    if m < 1 or k < 1:
        raise ValueError("m and k must be positive")
    if k == 1:
        raise NotConstructible(f"MR({m},{m};2,2) does not exist for any m")
    if m == 1:
        raise NotConstructible("need m >= 2 to fit two filled cells per column")

    n = k * m
    cells: List[List] = [[None] * n for _ in range(m)]

    def put(i: int, col: int, v: int) -> None:
        cells[i % m][col] = v

    for l in range(k):
        for i in range(m):
            col = l * m + i
            if k % 2 == 0:
                descending = l % 2 == 1
            elif l == k - 1:
                # final subsquare interleaves the two middle value blocks
                put(i, col, (k + 1) * m - 2 * i - 1)
                put(i + 1, col, (k - 1) * m + 2 * i)
                continue
            else:
                descending = l > (k - 1) // 2
            if descending:
                put(i, col, (l + 1) * m - i - 1)
                put(i + 1, col, (2 * k - l - 1) * m + i)
            else:
                put(i, col, l * m + i)
                put(i + 1, col, (2 * k - l) * m - i - 1)
    return HoleyGrid.from_rows(cells)


def _stacked_squares(m: int, k: int, s: int, square: HoleyGrid) -> List[HoleyGrid]:
    """The k subsquares of the stacked construction, built by routing
    shifted copies of the ingredient's diagonals through a Kotzig array."""
    support = _require_ms(square, m, s)
    labels = _canonical_labels(support, m)
    routing = kotzig(s, k).entries

    # blocks[l][i] = diagonal label i of the ingredient shifted into copy l
    blocks: List[List[DiagonalBlock]] = []
    for l in range(k):
        shift = l * m * s
        row = []
        for i, d in enumerate(labels):
            values = []
            for p in range(m):
                v = square.cells[p][(p + d) % m]
                if v is None:
                    raise BadIngredient(f"diagonal {d} of MS({m};{s}) ingredient has a hole")
                values.append(v + shift)
            row.append(DiagonalBlock(l, i, tuple(values)))
        blocks.append(row)

    squares = []
    for j in range(k):
        cells: List[List] = [[None] * m for _ in range(m)]
        for i, d in enumerate(labels):
            block = blocks[routing[i][j]][i]
            for p in range(m):
                cells[p][(p + d) % m] = block.values[p]
        squares.append(HoleyGrid.from_rows(cells))
    return squares


def stacked(m: int, k: int, s: int, square: HoleyGrid) -> HoleyGrid:
    """MR(m, km; ks, s) from an s-diagonal MS(m;s) ingredient."""
    if min(m, k, s) < 1:
        raise ValueError("m, k and s must be positive")
    if m == s == k == 1:
        _require_ms(square, 1, 1)
        return square
    if not (2 <= s <= m and (s % 2 == 0 or (k * m) % 2 == 1)):
        raise NotConstructible(
            f"no MR({m},{k * m};{k * s},{s}): need 2 <= s <= m and s even or km odd"
        )
    if s == 2:
        if k == 1:
            raise NotConstructible(f"MR({m},{m};2,2) does not exist for any m")
        return two_per_column(m, k)
    if k == 1:
        _require_ms(square, m, s)
        return square

    squares = _stacked_squares(m, k, s, square)
    rows = []
    for p in range(m):
        row: List = []
        for t in squares:
            row.extend(t.cells[p])
        rows.append(row)
    return HoleyGrid.from_rows(rows)


def nmss(m: int, s: int, t: int, square: HoleyGrid) -> NmssResult:
    """Nonconsecutive magic square set: the t subsquares of the stacked
    construction kept separate, sharing the constant s(mst-1)/2."""
    if min(m, s, t) < 1:
        raise ValueError("m, s and t must be positive")
    if m == s == t == 1:
        _require_ms(square, 1, 1)
        return NmssResult((square,), 0)
    if not (3 <= s <= m and (s % 2 == 0 or (m * t) % 2 == 1)):
        raise NotConstructible(
            f"no NMSS({m},{s};{t}): need 3 <= s <= m and s even or mt odd"
        )
    squares = tuple(_stacked_squares(m, t, s, square))
    constant = s * (m * s * t - 1) // 2
    return NmssResult(squares, constant)


def product(square: HoleyGrid, rect: HoleyGrid) -> HoleyGrid:
    """MR(am, bm; bs, as) from an MS(m;s) and a full a x b magic rectangle.

    Every filled cell (i,j;k) of the square becomes an a x b block holding
    a translate of the rectangle: cell (p,q;l) of the rectangle lands at
    (ia+p, jb+q) with value k*ab + l.
    """
    if square.rows != square.cols:
        raise BadIngredient(f"first ingredient must be square, got {square.rows}x{square.cols}")
    m = square.rows
    filled = sum(1 for _ in square.filled())
    if filled % m != 0:
        raise BadIngredient("first ingredient has ragged fill counts")
    s = filled // m
    if s < 1:
        raise BadIngredient("first ingredient is empty")
    _require(square, MagicSpec(m, m, s, s), f"MS({m};{s}) ingredient")
    a, b = rect.rows, rect.cols
    _require(rect, MagicSpec(a, b, b, a), f"MR({a},{b}) ingredient")

    ab = a * b
    cells: List[List] = [[None] * (b * m) for _ in range(a * m)]
    for i, j, k in square.filled():
        for p, q, l in rect.filled():
            cells[i * a + p][j * b + q] = k * ab + l
    return HoleyGrid.from_rows(cells)


def _strip_half_diagonals(strip: HoleyGrid, m: int) -> Dict[Tuple[int, int], List[int]]:
    """Values on each complete local diagonal of each m x m half of an
    m x 2m strip, keyed by (half, local diagonal)."""
    out: Dict[Tuple[int, int], List[int]] = {}
    for h in (0, 1):
        for d in range(m):
            vals = []
            for p in range(m):
                v = strip.cells[p][h * m + (p + d) % m]
                if v is not None:
                    vals.append(v)
            if vals:
                if len(vals) != m:
                    raise BadIngredient(
                        f"strip half {h} diagonal {d} is only partly filled"
                    )
                out[(h, d)] = vals
    return out


def five_case(m: int, s: int, square2m: HoleyGrid, strip: HoleyGrid) -> HoleyGrid:
    """MR(2m, 3m; 3s, 2s) from an MS(2m;2s) and an MR(m,2m;2s,s) strip.

    The big square must carry the values 0..ms-1 on s/2 complete diagonals
    (each one a run of 2m consecutive numbers); the strip's diagonals must
    split cleanly below/above ms within each m x m half, s/2 high per half.
    Those cells get bumped by 4ms, then the strip is glued on transposed.
    """
    if m < 1 or s < 1:
        raise ValueError("m and s must be positive")
    if s % 2 == 1:
        raise NotConstructible(f"no MR({2 * m},{3 * m};{3 * s},{2 * s}): s must be even")
    if s > m:
        raise NotConstructible(f"need s <= m, got s={s} m={m}")
    ms = m * s
    bump = 4 * ms

    support = _require_ms(square2m, 2 * m, 2 * s)
    low_diagonals = []
    for d in sorted(support):
        vals = [square2m.cells[p][(p + d) % (2 * m)] for p in range(2 * m)]
        if max(vals) < ms:
            if max(vals) - min(vals) != 2 * m - 1:
                raise BadIngredient(
                    f"low diagonal {d} of the big square is not a block of {2 * m} consecutive values"
                )
            low_diagonals.append(d)
    if len(low_diagonals) != s // 2:
        raise BadIngredient(
            f"big square needs exactly {s // 2} diagonals below {ms}, found {len(low_diagonals)}"
        )
    low_values = sorted(
        square2m.cells[p][(p + d) % (2 * m)] for d in low_diagonals for p in range(2 * m)
    )
    if low_values != list(range(ms)):
        raise BadIngredient(f"low diagonals of the big square do not partition 0..{ms - 1}")
    if not is_consecutive_cyclic(set(low_diagonals), 2 * m):
        raise BadIngredient("low diagonals of the big square are not consecutive")

    _require(strip, MagicSpec(m, 2 * m, 2 * s, s), f"MR({m},{2 * m};{2 * s},{s}) strip")
    halves = _strip_half_diagonals(strip, m)
    high: Dict[int, List[int]] = {0: [], 1: []}
    for (h, d), vals in halves.items():
        below = sum(1 for v in vals if v < ms)
        if below not in (0, len(vals)):
            raise BadIngredient(f"strip half {h} diagonal {d} mixes values across {ms}")
        if below == 0:
            high[h].append(d)
    if len(high[0]) != s // 2 or len(high[1]) != s // 2:
        raise BadIngredient(
            f"each strip half needs {s // 2} diagonals above {ms}, found "
            f"{len(high[0])} and {len(high[1])}"
        )

    acells = [list(row) for row in square2m.cells]
    for d in low_diagonals:
        for p in range(2 * m):
            acells[p][(p + d) % (2 * m)] += bump
    bcells = [list(row) for row in strip.cells]
    for h in (0, 1):
        for d in high[h]:
            for p in range(m):
                bcells[p][h * m + (p + d) % m] += bump

    cells: List[List] = [[None] * (3 * m) for _ in range(2 * m)]
    for i in range(2 * m):
        for j in range(2 * m):
            cells[i][j] = acells[i][j]
    for i in range(m):
        for j in range(2 * m):
            if bcells[i][j] is not None:
                cells[j][2 * m + i] = bcells[i][j]
    return HoleyGrid.from_rows(cells)


def block_set(a: int, b: int, c: int, rects: Sequence[HoleyGrid]) -> HoleyGrid:
    """MR(ac, bc; b, a) with the c members of an MRS(a,b;c) on the block
    diagonal and every other block empty."""
    if min(a, b, c) < 1:
        raise ValueError("a, b and c must be positive")
    if not 2 <= a <= b:
        raise NotConstructible(f"need 2 <= a <= b, got a={a} b={b}")
    all_odd = a % 2 == 1 and b % 2 == 1 and c % 2 == 1
    both_even = a % 2 == 0 and b % 2 == 0 and (a, b) != (2, 2)
    if not (all_odd or both_even):
        raise NotConstructible(
            f"no MRS({a},{b};{c}): need a,b,c all odd, or a,b both even and not (2,2)"
        )
    _require_mrs(rects, a, b, c)

    cells: List[List] = [[None] * (b * c) for _ in range(a * c)]
    for k, rect in enumerate(rects):
        for p, q, v in rect.filled():
            cells[k * a + p][k * b + q] = v
    return HoleyGrid.from_rows(cells)


def _require_mrs(rects: Sequence[HoleyGrid], a: int, b: int, c: int) -> None:
    """Validate a magic rectangle set: c full a x b rectangles jointly
    holding 0..abc-1 with common row sum b(abc-1)/2 and column sum
    a(abc-1)/2 (checked doubled to stay in integers)."""
    if len(rects) != c:
        raise BadIngredient(f"expected {c} rectangles, got {len(rects)}")
    double_row = b * (a * b * c - 1)
    double_col = a * (a * b * c - 1)
    values = []
    for idx, rect in enumerate(rects):
        if (rect.rows, rect.cols) != (a, b):
            raise BadIngredient(f"member {idx} is {rect.rows}x{rect.cols}, expected {a}x{b}")
        for i, row in enumerate(rect.cells):
            if any(v is None for v in row):
                raise BadIngredient(f"member {idx} has holes")
            if 2 * sum(row) != double_row:
                raise BadIngredient(f"member {idx} row {i} breaks the row constant")
        for j in range(b):
            if 2 * sum(rect.cells[i][j] for i in range(a)) != double_col:
                raise BadIngredient(f"member {idx} column {j} breaks the column constant")
        values.extend(v for _, _, v in rect.filled())
    if sorted(values) != list(range(a * b * c)):
        raise BadIngredient(f"members do not partition 0..{a * b * c - 1}")


def realize(m: int, n: int, r: int, s: int, *, cache=None, budget=None) -> HoleyGrid:
    """Build a witness for an Exists verdict of decide(m, n, r, s).

    Raises NotConstructible when the verdict is NotExists or Unknown, and
    passes SearchBudgetExceeded through when an ingredient search gives up.
    """
    from .existence import decide

    decision = decide(m, n, r, s)
    if decision.verdict != "exists":
        raise NotConstructible(f"decide({m},{n},{r},{s}) is {decision.verdict}")
    kw = {}
    if cache is not None:
        kw["cache"] = cache
    if budget is not None:
        kw["budget"] = budget

    route = decision.route
    if route == "Trivial":
        return HoleyGrid.from_rows([[0]])
    if route == "Classical":
        return ingredients.classical_rectangle(m, n, **kw)
    if route == "TwoPerColumn":
        return two_per_column(m, n // m)
    if route == "Stacked":
        square = ingredients.magic_square_holes(m, s, **kw)
        return stacked(m, n // m, s, square)
    if route == "FiveCase":
        d = m // 2
        sigma = s // 2
        profile = DiagonalProfile(((sigma // 2, 0, d * sigma - 1),))
        big = ingredients.magic_square_holes(m, s, profile=profile, **kw)
        if sigma == 2:
            strip = two_per_column(d, 2)
        else:
            strip = stacked(d, 2, sigma, ingredients.magic_square_holes(d, sigma, **kw))
        return five_case(d, sigma, big, strip)
    if route == "Product":
        g = math.gcd(m, n)
        a, b = m // g, n // g
        square = ingredients.magic_square_holes(g, s // a, **kw)
        rect = ingredients.classical_rectangle(a, b, **kw)
        return product(square, rect)
    if route == "BlockSet":
        members = ingredients.magic_rectangle_set(s, r, m // s, **kw)
        return block_set(s, r, m // s, members)
    raise NotConstructible(f"no constructor wired for route {route}")
