"""Ingredient grids for the constructions: holey magic squares MS(m;s),
classical full magic rectangles and magic rectangle sets MRS(a,b;c).

Resolution order is always catalog, then cache, then deterministic
backtracking search.  Search failure by exhaustion raises NotConstructible;
running out of node budget raises SearchBudgetExceeded, which is
inconclusive and never a nonexistence claim.
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    CacheError,
    CorruptCache,
    NotConstructible,
    SearchBudgetExceeded,
)
from .grid import (
    HoleyGrid,
    MagicSpec,
    diagonal_support,
    is_consecutive_cyclic,
    parse,
    serialize,
    verify,
)

DEFAULT_BUDGET = 10 ** 8

# Known squares, byte-identical to their published form.  Keys are (m, s).
_CATALOG_MS = {
    (5, 3): (
        "5 5\n"
        ". . 2 10 9\n"
        "6 . . 4 11\n"
        "12 8 . . 1\n"
        "3 13 5 . .\n"
        ". 0 14 7 .\n"
    ),
    (6, 4): (
        "6 6\n"
        ". 0 23 15 8 .\n"
        ". . 1 22 14 9\n"
        "10 . . 2 21 13\n"
        "12 11 . . 3 20\n"
        "19 17 6 . . 4\n"
        "5 18 16 7 . .\n"
    ),
}


@dataclass(frozen=True)
class DiagonalProfile:
    """Structural demand on a holey magic square's diagonals.

    Each run (q, lo, hi) requires q cyclically consecutive support
    diagonals that jointly partition {lo..hi}, every diagonal holding a
    block of (hi-lo+1)/q consecutive values.
    """

    required_runs: Tuple[Tuple[int, int, int], ...]

    def __post_init__(self):
        seen = []
        for q, lo, hi in self.required_runs:
            if q < 1 or lo < 0 or hi < lo:
                raise ValueError(f"bad profile run {(q, lo, hi)}")
            if (hi - lo + 1) % q != 0:
                raise ValueError(f"run {(q, lo, hi)} does not split into {q} equal blocks")
            for plo, phi in seen:
                if lo <= phi and plo <= hi:
                    raise ValueError("profile runs overlap")
            seen.append((lo, hi))

    def tag(self) -> str:
        if not self.required_runs:
            return "-"
        return ",".join(f"{q}:{lo}:{hi}" for q, lo, hi in self.required_runs)


def profile_satisfied(grid: HoleyGrid, profile: DiagonalProfile) -> bool:
    """Content-based check of a profile: block membership is read off the
    diagonal values, not off any particular diagonal position."""
    if grid.rows != grid.cols:
        return False
    n = grid.rows
    diags: Dict[int, List[int]] = {}
    for i, j, v in grid.filled():
        diags.setdefault((j - i) % n, []).append(v)
    for q, lo, hi in profile.required_runs:
        block = (hi - lo + 1) // q
        members = [d for d, vals in diags.items() if min(vals) >= lo and max(vals) <= hi]
        if len(members) != q:
            return False
        union = sorted(v for d in members for v in diags[d])
        if union != list(range(lo, hi + 1)):
            return False
        for d in members:
            vals = diags[d]
            if len(vals) != block or max(vals) - min(vals) != block - 1:
                return False
        if not is_consecutive_cyclic(set(members), n):
            return False
    return True


# ---------------------------------------------------------------------------
# search kernel

class _Budget:
    __slots__ = ("left",)

    def __init__(self, nodes: int):
        self.left = int(nodes)


def _staircase_key(cell):
    """Fill order that completes row 0, column 0, row 1, column 1, ... so
    both line constraints start binding as early as possible."""
    i, j = cell
    return (min(i, j), 0 if i <= j else 1, max(i, j))


def _search_assignment(ncells, cell_lines, cell_domain, lines, domains, budget,
                       precedes=()):
    """First exact assignment of distinct values to cells, or None.

    lines: list of (target, cell indices in fill order); domains: list of
    ascending value tuples with exact counts (each domain holds as many
    values as cells).  precedes: (earlier, later) cell pairs whose values
    must increase, the earlier cell coming first in fill order; used to
    break row/column permutation symmetry.  Charges one budget unit per
    attempted placement and raises SearchBudgetExceeded when the budget
    runs dry.
    """
    target = [t for t, _ in lines]
    size = [len(seq) for _, seq in lines]
    partial = [0] * len(lines)
    filled = [0] * len(lines)
    # (domain, multiplicity) of the unfilled cells of a line, by progress
    rest_doms = []
    for _, seq in lines:
        per_fill = []
        for k in range(len(seq) + 1):
            counts: Dict[int, int] = {}
            for c in seq[k:]:
                d = cell_domain[c]
                counts[d] = counts.get(d, 0) + 1
            per_fill.append(tuple(counts.items()))
        rest_doms.append(per_fill)

    dom_vals = [tuple(d) for d in domains]
    dom_used = [bytearray(len(d)) for d in domains]
    dom_lo = [0] * len(domains)
    dom_hi = [len(d) - 1 for d in domains]

    def min_sum(d, k):
        # sum of the k smallest unused values; exact counts guarantee that
        # k unused values exist whenever a line still has k cells in d
        vals, used = dom_vals[d], dom_used[d]
        i = dom_lo[d]
        while used[i]:
            i += 1
        dom_lo[d] = i
        t = 0
        while k:
            if not used[i]:
                t += vals[i]
                k -= 1
            i += 1
        return t

    def max_sum(d, k):
        vals, used = dom_vals[d], dom_used[d]
        i = dom_hi[d]
        while used[i]:
            i -= 1
        dom_hi[d] = i
        t = 0
        while k:
            if not used[i]:
                t += vals[i]
                k -= 1
            i -= 1
        return t

    prec_of = [() for _ in range(ncells)]
    if precedes:
        buckets: Dict[int, List[int]] = {}
        for earlier, later in precedes:
            buckets.setdefault(later, []).append(earlier)
        for later, earlier_list in buckets.items():
            prec_of[later] = tuple(earlier_list)

    assignment = [None] * ncells

    def place(idx):
        if idx == ncells:
            return True
        d = cell_domain[idx]
        vals, used = dom_vals[d], dom_used[d]
        my_lines = cell_lines[idx]
        cap = min(target[L] - partial[L] for L in my_lines)
        floor = -1
        for p in prec_of[idx]:
            if assignment[p] > floor:
                floor = assignment[p]
        for vi in range(len(vals)):
            if used[vi]:
                continue
            v = vals[vi]
            if v > cap:
                break
            if v <= floor:
                continue
            budget.left -= 1
            if budget.left < 0:
                raise SearchBudgetExceeded("node budget exhausted")
            used[vi] = 1
            ok = True
            for L in my_lines:
                partial[L] += v
                filled[L] += 1
            for L in my_lines:
                need = target[L] - partial[L]
                rem = size[L] - filled[L]
                if rem == 0:
                    if need != 0:
                        ok = False
                        break
                else:
                    lo = hi = 0
                    for rd, cnt in rest_doms[L][filled[L]]:
                        lo += min_sum(rd, cnt)
                        hi += max_sum(rd, cnt)
                    if not lo <= need <= hi:
                        ok = False
                        break
            if ok:
                assignment[idx] = v
                if place(idx + 1):
                    return True
            for L in my_lines:
                partial[L] -= v
                filled[L] -= 1
            used[vi] = 0
            if vi < dom_lo[d]:
                dom_lo[d] = vi
            if vi > dom_hi[d]:
                dom_hi[d] = vi
        return False

    if place(0):
        return list(assignment)
    return None


# ---------------------------------------------------------------------------
# holey magic squares

def _ms_anchored(m, s, runs, budget):
    """Search MS(m;s) with the given block runs anchored consecutively on
    the canonical support {m-s..m-1}, trying every anchor in order.

    Empty runs mean a fully unrestricted value pool.  Returns None when
    every anchor's space is exhausted.
    """
    total = m * s
    q_total = sum(q for q, _, _ in runs)
    if q_total > s:
        return None
    for q, lo, hi in runs:
        if (hi - lo + 1) // q != m or hi >= total:
            return None

    support = list(range(m - s, m))
    target2 = s * (total - 1)
    if target2 % 2:
        return None
    target = target2 // 2

    on_support = set(support)
    cells = sorted(
        ((i, j) for i in range(m) for j in range(m) if (j - i) % m in on_support),
        key=_staircase_key,
    )
    index_of = {cell: idx for idx, cell in enumerate(cells)}
    if q_total == 0:
        anchors = range(1)  # no runs to place, every anchor is the same
    elif s == m:
        anchors = range(s)  # full support wraps, so runs may too
    else:
        anchors = range(s - q_total + 1)

    for anchor in anchors:
        dom_of_diag = {}
        domains: List[Tuple[int, ...]] = []
        slot = anchor
        assigned = set()
        for q, lo, hi in runs:
            for b in range(q):
                d = support[(slot + b) % s]
                domains.append(tuple(range(lo + b * m, lo + (b + 1) * m)))
                dom_of_diag[d] = len(domains) - 1
                assigned.update(domains[-1])
            slot += q
        leftover = tuple(v for v in range(total) if v not in assigned)
        if leftover:
            domains.append(leftover)
            for d in support:
                if d not in dom_of_diag:
                    dom_of_diag[d] = len(domains) - 1

        cell_domain = [dom_of_diag[(j - i) % m] for i, j in cells]
        lines = []
        for i in range(m):
            seq = [index_of[c] for c in cells if c[0] == i]
            lines.append((target, seq))
        for j in range(m):
            seq = [index_of[c] for c in cells if c[1] == j]
            lines.append((target, seq))
        cell_lines = [(i, m + j) for i, j in cells]

        got = _search_assignment(len(cells), cell_lines, cell_domain, lines, domains, budget)
        if got is not None:
            grid = [[None] * m for _ in range(m)]
            for (i, j), v in zip(cells, got):
                grid[i][j] = v
            return HoleyGrid.from_rows(grid)
    return None


def magic_square_holes(m: int, s: int, profile: Optional[DiagonalProfile] = None,
                       *, cache=None, budget: int = DEFAULT_BUDGET) -> HoleyGrid:
    """An s-diagonal MS(m;s), optionally matching a diagonal profile.

    Exists iff m=s=1 or 3 <= s <= m with s even or m odd; anything else
    raises NotConstructible.  Resolution: catalog, cache, then layered
    search (all diagonals as value blocks, then all but two, then free).
    """
    if m < 1 or s < 1:
        raise ValueError("m and s must be positive")
    if m == 1 and s == 1:
        grid = HoleyGrid.from_rows([[0]])
        if profile is not None and not profile_satisfied(grid, profile):
            raise NotConstructible("MS(1;1) cannot satisfy the requested profile")
        return grid
    if not (3 <= s <= m and (s % 2 == 0 or m % 2 == 1)):
        raise NotConstructible(
            f"no MS({m};{s}): need m=s=1 or 3 <= s <= m with s even or m odd"
        )

    text = _CATALOG_MS.get((m, s))
    if text is not None:
        grid = parse(text)
        if profile is None or profile_satisfied(grid, profile):
            return grid

    store = _as_cache(cache)
    if store is not None:
        hit = store.load("ms", (m, s), profile)
        if hit is not None:
            return hit[0]

    b = _Budget(budget)
    if profile is not None:
        grid = _ms_anchored(m, s, profile.required_runs, b)
        if grid is None:
            raise NotConstructible(
                f"no MS({m};{s}) with diagonal profile {profile.tag()} "
                "(anchored block search exhausted)"
            )
    else:
        grid = None
        if s < m:
            grid = _ms_anchored(m, s, ((s, 0, m * s - 1),), b)
            if grid is None and s >= 3:
                grid = _ms_anchored(m, s, ((s - 2, 0, m * (s - 2) - 1),), b)
        if grid is None:
            grid = _ms_anchored(m, s, (), b)
        if grid is None:
            raise NotConstructible(f"search exhausted without finding MS({m};{s})")

    if store is not None:
        store.store("ms", (m, s), [grid], profile)
    return grid


# ---------------------------------------------------------------------------
# classical full magic rectangles

def _rect_problem(rows, cols, grids=1):
    """Cells, lines, line membership and symmetry-breaking precedence
    pairs for `grids` full rows x cols rectangles sharing one value pool.

    Near-square grids fill in staircase order (rows and columns bind
    alternately); wide ones complete the short columns one at a time --
    the crossover is empirical.  Rows and columns of each rectangle
    permute freely, and so do the rectangles themselves, so each one is
    pinned to the canonical form with its minimum in the corner and first
    row/column ascending, corners increasing across rectangles.
    """
    if rows == cols or (rows >= 4 and (cols <= 8 or cols - rows <= 2)):
        order = sorted(((i, j) for i in range(rows) for j in range(cols)),
                       key=_staircase_key)
    else:
        order = [(i, j) for j in range(cols) for i in range(rows)]
    cells = []
    for g in range(grids):
        cells.extend((g, i, j) for i, j in order)
    index_of = {c: k for k, c in enumerate(cells)}
    total = rows * cols * grids
    row2 = cols * (total - 1)
    col2 = rows * (total - 1)
    assert row2 % 2 == 0 and col2 % 2 == 0  # callers screen parity first
    lines = []
    cell_lines = [[] for _ in cells]
    for g in range(grids):
        for i in range(rows):
            seq = [index_of[(g, i, j)] for j in range(cols)]
            for c in seq:
                cell_lines[c].append(len(lines))
            lines.append((row2 // 2, seq))
        for j in range(cols):
            seq = [index_of[(g, i, j)] for i in range(rows)]
            for c in seq:
                cell_lines[c].append(len(lines))
            lines.append((col2 // 2, seq))
    cell_lines = [tuple(x) for x in cell_lines]
    precedes = []
    for g in range(grids):
        corner = index_of[(g, 0, 0)]
        for i, j in order:
            if (i, j) != (0, 0):
                precedes.append((corner, index_of[(g, i, j)]))
        for j in range(1, cols - 1):
            precedes.append((index_of[(g, 0, j)], index_of[(g, 0, j + 1)]))
        for i in range(1, rows - 1):
            precedes.append((index_of[(g, i, 0)], index_of[(g, i + 1, 0)]))
        if g:
            precedes.append((index_of[(g - 1, 0, 0)], corner))
    return cells, cell_lines, lines, precedes


def classical_rectangle(a: int, b: int, *, cache=None, budget: int = DEFAULT_BUDGET) -> HoleyGrid:
    """Full a x b magic rectangle on 0..ab-1.

    Exists iff a=b=1 or (a and b share parity, a+b > 5, both > 1).
    """
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    if a == 1 and b == 1:
        return HoleyGrid.from_rows([[0]])
    if not (a % 2 == b % 2 and a + b > 5 and a > 1 and b > 1):
        raise NotConstructible(
            f"no MR({a},{b}): need a = b (mod 2), a+b > 5 and a,b > 1"
        )

    store = _as_cache(cache)
    if store is not None:
        hit = store.load("mr", (a, b))
        if hit is not None:
            return hit[0]

    # search the short orientation; transpose back afterwards if needed
    rows, cols = min(a, b), max(a, b)
    cells, cell_lines, lines, precedes = _rect_problem(rows, cols)
    domains = [tuple(range(rows * cols))]
    cell_domain = [0] * len(cells)
    got = _search_assignment(len(cells), cell_lines, cell_domain, lines, domains,
                             _Budget(budget), precedes)
    if got is None:
        raise NotConstructible(f"search exhausted without finding MR({a},{b})")
    grid = [[None] * cols for _ in range(rows)]
    for (g, i, j), v in zip(cells, got):
        grid[i][j] = v
    if a > b:
        grid = [[grid[i][j] for i in range(rows)] for j in range(cols)]
    result = HoleyGrid.from_rows(grid)
    if store is not None:
        store.store("mr", (a, b), [result])
    return result


# ---------------------------------------------------------------------------
# magic rectangle sets

def magic_rectangle_set(a: int, b: int, c: int, *, cache=None,
                        budget: int = DEFAULT_BUDGET) -> List[HoleyGrid]:
    """c full a x b rectangles jointly holding 0..abc-1 with shared row sum
    b(abc-1)/2 and column sum a(abc-1)/2.

    Exists iff 1 < a <= b and (a, b, c all odd, or a, b both even with
    (a,b) != (2,2)).
    """
    if min(a, b, c) < 1:
        raise ValueError("a, b and c must be positive")
    if not 1 < a <= b:
        raise NotConstructible(f"no MRS({a},{b};{c}): need 1 < a <= b")
    all_odd = a % 2 == 1 and b % 2 == 1 and c % 2 == 1
    both_even = a % 2 == 0 and b % 2 == 0 and (a, b) != (2, 2)
    if not (all_odd or both_even):
        raise NotConstructible(
            f"no MRS({a},{b};{c}): need a,b,c all odd, or a,b both even and not (2,2)"
        )

    store = _as_cache(cache)
    if store is not None:
        hit = store.load("mrs", (a, b, c))
        if hit is not None:
            return hit

    total = a * b * c
    cells, cell_lines, lines, precedes = _rect_problem(a, b, grids=c)
    domains = [tuple(range(total))]
    cell_domain = [0] * len(cells)
    got = _search_assignment(len(cells), cell_lines, cell_domain, lines, domains,
                             _Budget(budget), precedes)
    if got is None:
        raise NotConstructible(f"search exhausted without finding MRS({a},{b};{c})")
    grids = []
    for g in range(c):
        rows = [[None] * b for _ in range(a)]
        grids.append(rows)
    for (g, i, j), v in zip(cells, got):
        grids[g][i][j] = v
    result = [HoleyGrid.from_rows(rows) for rows in grids]
    if store is not None:
        store.store("mrs", (a, b, c), result)
    return result


# ---------------------------------------------------------------------------
# persistent cache

def _cache_key(kind: str, params: Sequence[int], profile: Optional[DiagonalProfile]) -> str:
    tag = profile.tag() if profile is not None else "-"
    return " ".join([kind, *map(str, params), tag])


def _blocks_for(kind: str, params: Sequence[int]) -> int:
    return params[2] if kind == "mrs" else 1


def _validate_entry(kind, params, profile, grids):
    """Re-verify a cache entry; any failure means the file was tampered."""
    try:
        if kind == "ms":
            m, s = params
            if len(grids) != 1 or not verify(grids[0], MagicSpec(m, m, s, s)).ok:
                raise CorruptCache(f"cached ms {params} fails verification")
            support = diagonal_support(grids[0])
            if len(support) != s or not is_consecutive_cyclic(support, m):
                raise CorruptCache(f"cached ms {params} is not {s}-diagonal")
            if profile is not None and not profile_satisfied(grids[0], profile):
                raise CorruptCache(f"cached ms {params} violates profile {profile.tag()}")
        elif kind == "mr":
            va, vb = params
            if len(grids) != 1 or not verify(grids[0], MagicSpec(va, vb, vb, va)).ok:
                raise CorruptCache(f"cached mr {params} fails verification")
        elif kind == "mrs":
            va, vb, vc = params
            if len(grids) != vc:
                raise CorruptCache(f"cached mrs {params} has {len(grids)} blocks")
            values = []
            for rect in grids:
                if (rect.rows, rect.cols) != (va, vb):
                    raise CorruptCache(f"cached mrs {params} member has wrong shape")
                for row in rect.cells:
                    if any(v is None for v in row) or 2 * sum(row) != vb * (va * vb * vc - 1):
                        raise CorruptCache(f"cached mrs {params} breaks a row constant")
                for j in range(vb):
                    if 2 * sum(rect.cells[i][j] for i in range(va)) != va * (va * vb * vc - 1):
                        raise CorruptCache(f"cached mrs {params} breaks a column constant")
                values.extend(v for _, _, v in rect.filled())
            if sorted(values) != list(range(va * vb * vc)):
                raise CorruptCache(f"cached mrs {params} does not partition the value range")
        else:
            raise CorruptCache(f"unknown cache kind {kind!r}")
    except CorruptCache:
        raise
    except Exception as exc:
        raise CorruptCache(f"cached {kind} {params} is malformed: {exc}") from exc


class IngredientCache:
    """Human-inspectable file of searched ingredients.

    Records are a KEY line ("KEY <kind> <params...> <profile-tag>") followed
    by the entry's MRX blocks.  Stores rewrite the whole file atomically, so
    readers never observe torn writes.
    """

    def __init__(self, path):
        self.path = str(path)

    def load(self, kind, params, profile=None):
        """Grids for the key, or None on a miss.  Entries re-verify on load;
        tampering raises CorruptCache."""
        entries = self._read()
        texts = entries.get(_cache_key(kind, params, profile))
        if texts is None:
            return None
        try:
            grids = [parse(t) for t in texts]
        except Exception as exc:
            raise CorruptCache(f"unparseable cache entry for {kind} {params}: {exc}") from exc
        _validate_entry(kind, tuple(params), profile, grids)
        return grids

    def store(self, kind, params, grids, profile=None):
        entries = self._read()
        entries[_cache_key(kind, params, profile)] = [serialize(g) for g in grids]
        lines = []
        for key, texts in entries.items():
            lines.append(f"KEY {key}\n")
            lines.extend(texts)
        payload = "".join(lines)
        try:
            directory = os.path.dirname(self.path) or "."
            fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ingredients-")
            try:
                with os.fdopen(fd, "w") as fh:
                    fh.write(payload)
                os.replace(tmp, self.path)
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise
        except OSError as exc:
            raise CacheError(f"cannot write cache {self.path}: {exc}") from exc

    def _read(self) -> Dict[str, List[str]]:
        try:
            with open(self.path, "r") as fh:
                raw = fh.read()
        except FileNotFoundError:
            return {}
        except OSError as exc:
            raise CacheError(f"cannot read cache {self.path}: {exc}") from exc
        entries: Dict[str, List[str]] = {}
        lines = raw.splitlines(keepends=True)
        pos = 0
        while pos < len(lines):
            head = lines[pos].rstrip("\n")
            if not head.startswith("KEY "):
                raise CorruptCache(f"{self.path}: expected KEY line at line {pos + 1}")
            key = head[4:]
            parts = key.split(" ")
            if len(parts) < 2:
                raise CorruptCache(f"{self.path}: malformed key {key!r}")
            kind, params = parts[0], parts[1:-1]
            try:
                nblocks = _blocks_for(kind, [int(p) for p in params])
            except (ValueError, IndexError) as exc:
                raise CorruptCache(f"{self.path}: malformed key {key!r}") from exc
            pos += 1
            texts = []
            for _ in range(nblocks):
                if pos >= len(lines):
                    raise CorruptCache(f"{self.path}: truncated entry for {key!r}")
                header = lines[pos].split()
                if len(header) != 2 or not all(t.isdigit() for t in header):
                    raise CorruptCache(f"{self.path}: bad block header at line {pos + 1}")
                nrows = int(header[0])
                block = lines[pos:pos + nrows + 1]
                if len(block) != nrows + 1:
                    raise CorruptCache(f"{self.path}: truncated block for {key!r}")
                texts.append("".join(block))
                pos += nrows + 1
            entries[key] = texts
        return entries


def _as_cache(cache) -> Optional[IngredientCache]:
    if cache is None:
        return None
    if isinstance(cache, IngredientCache):
        return cache
    return IngredientCache(cache)
