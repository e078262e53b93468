"""Stock an ingredient cache once, then rebuild rectangles from it.

The composite constructors want searched ingredients (squares with holes,
classical rectangles, rectangle sets).  Searching is the slow part, so the
high-level builder takes a cache file; the second pass below should come
back near-instant with byte-identical output.
"""

import tempfile
import time
from pathlib import Path

from holeymagic import IngredientCache, MagicSpec, realize, serialize, verify

SHAPES = [
    (7, 21, 9, 3),     # towers over a searched 7x7 square
    (15, 25, 15, 9),   # product of a square and a 3x5 rectangle
    (8, 12, 6, 4),     # the five-case splice, diagonal-anchored search
    (5, 10, 4, 2),     # pure construction, no search involved
]
BUDGET = 20_000_000


def build_all(cache):
    outputs = {}
    for shape in SHAPES:
        start = time.perf_counter()
        grid = realize(*shape, cache=cache, budget=BUDGET)
        elapsed = time.perf_counter() - start
        report = verify(grid, MagicSpec(*shape))
        assert report.ok
        print(f"  {shape}: {elapsed * 1000:8.1f} ms, "
              f"sums {report.row_constant}/{report.col_constant}")
        outputs[shape] = serialize(grid)
    return outputs


def main():
    with tempfile.TemporaryDirectory() as tmp:
        pantry = Path(tmp) / "pantry.mrx"
        cache = IngredientCache(pantry)

        print("cold pass (searches run, results stored):")
        first = build_all(cache)

        print("warm pass (everything from the pantry):")
        second = build_all(cache)

        identical = all(first[s] == second[s] for s in SHAPES)
        size = pantry.stat().st_size
        print(f"pantry file: {size} bytes, outputs identical: {identical}")


if __name__ == "__main__":
    main()
