"""Independent brute-force enumeration of MR(m,n;r,s) grids.

Shares no code with the constructions: a plain cell-by-cell backtracking
sweep, row-major, trying Empty before values and values in ascending
order, so counts and witness order are reproducible.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Optional, Tuple

from .grid import HoleyGrid, MagicSpec

DEFAULT_NODE_BUDGET = 10 ** 9

# Full enumeration is factorial; beyond this many values the caller must
# opt in explicitly.
LARGE_VALUE_COUNT = 14


@dataclass(frozen=True)
class EnumerationResult:
    count: int
    witnesses: Tuple[HoleyGrid, ...]
    exhausted: bool


def enumerate(m: int, n: int, r: int, s: int, witness_cap: int = 4,
              node_budget: int = DEFAULT_NODE_BUDGET, *,
              allow_large: bool = False) -> EnumerationResult:
    """Count every MR(m,n;r,s) grid, keeping up to witness_cap of them.

    Malformed parameters raise ShapeError.  Running out of node budget
    returns the partial count with exhausted=False instead of raising.
    """
    MagicSpec(m, n, r, s)
    if witness_cap < 0:
        raise ValueError("witness_cap must be >= 0")
    if node_budget < 1:
        raise ValueError("node_budget must be positive")
    if m * r > LARGE_VALUE_COUNT and not allow_large:
        raise ValueError(
            f"{m * r} values is beyond the default enumeration range; "
            "pass allow_large=True to search anyway"
        )
    return _run(m, n, r, s, witness_cap, node_budget, None)


def exists_brute(m: int, n: int, r: int, s: int,
                 node_budget: int = DEFAULT_NODE_BUDGET, *,
                 allow_large: bool = False) -> str:
    """"yes", "no" or "inconclusive", stopping at the first witness."""
    MagicSpec(m, n, r, s)
    if node_budget < 1:
        raise ValueError("node_budget must be positive")
    if m * r > LARGE_VALUE_COUNT and not allow_large:
        raise ValueError(
            f"{m * r} values is beyond the default enumeration range; "
            "pass allow_large=True to search anyway"
        )
    res = _run(m, n, r, s, 1, node_budget, 1)
    if res.count > 0:
        return "yes"
    return "no" if res.exhausted else "inconclusive"


def _run(m, n, r, s, witness_cap, node_budget, stop_at) -> EnumerationResult:
    total = m * r
    row2 = r * (total - 1)
    col2 = s * (total - 1)
    if row2 % 2 or col2 % 2:
        # the magic constant is not an integer, so no grid can exist
        return EnumerationResult(0, (), True)
    row_t = row2 // 2
    col_t = col2 // 2

    cells = m * n
    need_depth = cells + 100
    if sys.getrecursionlimit() < need_depth:
        sys.setrecursionlimit(need_depth)

    grid = [[None] * n for _ in range(m)]
    row_fill = [0] * m
    col_fill = [0] * n
    row_sum = [0] * m
    col_sum = [0] * n
    witnesses = []
    state = {"nodes": 0, "count": 0, "halt": False, "aborted": False}

    def min_sum(mask, k):
        t = 0
        v = 0
        while k:
            if (mask >> v) & 1:
                t += v
                k -= 1
            v += 1
        return t

    def max_sum(mask, k):
        t = 0
        v = total - 1
        while k:
            if (mask >> v) & 1:
                t += v
                k -= 1
            v -= 1
        return t

    def walk(idx, mask):
        if idx == cells:
            state["count"] += 1
            if len(witnesses) < witness_cap:
                witnesses.append(HoleyGrid.from_rows([row[:] for row in grid]))
            if stop_at is not None and state["count"] >= stop_at:
                state["halt"] = True
                state["aborted"] = True
            return
        i, j = divmod(idx, n)

        if (n - 1 - j) >= r - row_fill[i] and (m - 1 - i) >= s - col_fill[j]:
            state["nodes"] += 1
            if state["nodes"] > node_budget:
                state["halt"] = True
                state["aborted"] = True
                return
            walk(idx + 1, mask)
            if state["halt"]:
                return

        if row_fill[i] < r and col_fill[j] < s:
            rfl = r - row_fill[i] - 1
            cfl = s - col_fill[j] - 1
            rneed0 = row_t - row_sum[i]
            cneed0 = col_t - col_sum[j]
            for v in range(total):
                if not (mask >> v) & 1:
                    continue
                state["nodes"] += 1
                if state["nodes"] > node_budget:
                    state["halt"] = True
                    state["aborted"] = True
                    return
                rneed = rneed0 - v
                cneed = cneed0 - v
                if rneed < 0 or cneed < 0:
                    break
                if rfl == 0 and rneed != 0:
                    continue
                if cfl == 0 and cneed != 0:
                    continue
                mask2 = mask ^ (1 << v)
                if rfl > 0 and not (min_sum(mask2, rfl) <= rneed <= max_sum(mask2, rfl)):
                    continue
                if cfl > 0 and not (min_sum(mask2, cfl) <= cneed <= max_sum(mask2, cfl)):
                    continue
                grid[i][j] = v
                row_fill[i] += 1
                col_fill[j] += 1
                row_sum[i] += v
                col_sum[j] += v
                walk(idx + 1, mask2)
                grid[i][j] = None
                row_fill[i] -= 1
                col_fill[j] -= 1
                row_sum[i] -= v
                col_sum[j] -= v
                if state["halt"]:
                    return

    walk(0, (1 << total) - 1)
    return EnumerationResult(state["count"], tuple(witnesses), not state["aborted"])
