"""Shared test helpers: a from-scratch magic checker and grid mutators.

naive_check deliberately reimplements the magic axioms with plain loops
and doubled integer sums so it shares nothing with the library verifier;
the two are compared for agreement on thousands of mutated grids.
"""

import random

from holeymagic import HoleyGrid


def naive_check(grid: HoleyGrid, m: int, n: int, r: int, s: int) -> bool:
    """Independent re-derivation of the magic property.

    Values must be exactly 0..mr-1, each row holds r of them summing to
    r(mr-1)/2, each column s of them summing to s(mr-1)/2.  Doubling both
    sides keeps the arithmetic in integers.
    """
    if grid.rows != m or grid.cols != n:
        return False
    total = m * r
    seen = []
    for i in range(m):
        vals = [v for v in grid.cells[i] if v is not None]
        if len(vals) != r:
            return False
        if 2 * sum(vals) != r * (total - 1):
            return False
        seen.extend(vals)
    for j in range(n):
        vals = [grid.cells[i][j] for i in range(m) if grid.cells[i][j] is not None]
        if len(vals) != s:
            return False
        if 2 * sum(vals) != s * (total - 1):
            return False
    return sorted(seen) == list(range(total))


def random_grid(rng: random.Random) -> HoleyGrid:
    """Arbitrary holey grid for serialization round-trips.

    Dimensions, fill pattern and values are unconstrained; occasional huge
    values exercise multi-digit tokens.
    """
    rows = rng.randint(1, 12)
    cols = rng.randint(1, 12)
    cells = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            roll = rng.random()
            if roll < 0.35:
                row.append(None)
            elif roll < 0.95:
                row.append(rng.randint(0, 999))
            else:
                row.append(rng.randint(10**9, 10**12))
        cells.append(tuple(row))
    return HoleyGrid(rows, cols, tuple(cells))


def mutate(grid: HoleyGrid, rng: random.Random) -> HoleyGrid:
    """Return a copy of grid with one random local edit.

    Edits cover the failure modes the verifier must catch: a bumped value,
    two swapped values, a value moved into a hole, a blanked cell and a
    duplicated value.  The edit may cancel out (a swap of equal-sum pairs,
    say); tests only require the two verifiers to agree on the result.
    """
    cells = [list(row) for row in grid.cells]
    filled = [(i, j) for i, j, _ in grid.filled()]
    holes = [
        (i, j)
        for i in range(grid.rows)
        for j in range(grid.cols)
        if cells[i][j] is None
    ]
    kinds = ["bump"]
    if len(filled) >= 2:
        kinds += ["swap", "duplicate"]
    if filled and holes:
        kinds += ["move", "blank", "fill"]
    kind = rng.choice(kinds)

    if kind == "bump":
        i, j = rng.choice(filled)
        cells[i][j] += rng.choice([1, 2, 5])
    elif kind == "swap":
        (a, b), (c, d) = rng.sample(filled, 2)
        cells[a][b], cells[c][d] = cells[c][d], cells[a][b]
    elif kind == "duplicate":
        (a, b), (c, d) = rng.sample(filled, 2)
        cells[a][b] = cells[c][d]
    elif kind == "move":
        i, j = rng.choice(filled)
        p, q = rng.choice(holes)
        cells[p][q] = cells[i][j]
        cells[i][j] = None
    elif kind == "blank":
        i, j = rng.choice(filled)
        cells[i][j] = None
    else:
        p, q = rng.choice(holes)
        i, j = rng.choice(filled)
        cells[p][q] = cells[i][j]

    return HoleyGrid(grid.rows, grid.cols, tuple(tuple(row) for row in cells))
