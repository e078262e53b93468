"""Kotzig arrays: s x k arrays whose rows are permutations of 0..k-1 and
whose columns all sum to (k-1)s/2.

They exist exactly when s is even or k is odd (with the one-column case
degenerate), and the constructions here are the canonical ones: an
identity/reversal pair of rows, a three-row block for odd k, and vertical
stacking of those blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .errors import ParityError


@dataclass(frozen=True)
class KotzigArray:
    s: int
    k: int
    entries: Tuple[Tuple[int, ...], ...]

    def column_sums(self):
        return tuple(sum(row[j] for row in self.entries) for j in range(self.k))


def base_pair(k: int) -> KotzigArray:
    """2 x k block: identity permutation over its reversal."""
    if k < 1:
        raise ValueError("k must be positive")
    top = tuple(range(k))
    return KotzigArray(2, k, (top, top[::-1]))


def base_triple(k: int) -> KotzigArray:
    """3 x k block for odd k; every column sums to 3(k-1)/2."""
    if k < 1:
        raise ValueError("k must be positive")
    if k % 2 == 0:
        raise ParityError(f"three-row block needs odd k, got {k}")
    h = (k - 1) // 2
    row0 = tuple(range(k))
    row1 = tuple(h + j if j <= h else j - h - 1 for j in range(k))
    row2 = tuple(k - 1 - 2 * j if j <= h else 2 * k - 1 - 2 * j for j in range(k))
    return KotzigArray(3, k, (row0, row1, row2))


def kotzig(s: int, k: int) -> KotzigArray:
    """Canonical s x k Kotzig array.

    Even s stacks s/2 copies of base_pair(k).  Odd s needs odd k and puts
    one base_triple(k) on top of (s-3)/2 copies of base_pair(k).  A single
    row only works over a single symbol, and a single column only with the
    all-zero array for odd s.
    """
    if s < 1 or k < 1:
        raise ValueError("s and k must be positive")
    if s % 2 == 1 and k % 2 == 0:
        raise ParityError(f"no Kotzig array for odd s={s} and even k={k}")
    if s % 2 == 1 and k == 1:
        # permutations of a single symbol; column sum 0 = (k-1)s/2
        return KotzigArray(s, 1, ((0,),) * s)
    if s == 1:
        # a lone permutation row cannot have constant column sums for k > 1
        raise ParityError(f"no 1x{k} Kotzig array exists for k > 1")
    rows = []
    if s % 2 == 1:
        rows.extend(base_triple(k).entries)
    pair = base_pair(k).entries
    while len(rows) < s:
        rows.extend(pair)
    return KotzigArray(s, k, tuple(rows))
