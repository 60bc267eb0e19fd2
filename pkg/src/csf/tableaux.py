"""f-tableaux: validity, enumeration, raw row moves and column-block splicing.

A tableau is a tuple of rows, each a tuple of labels, with no trailing empty
rows.  Validity relative to f is a predicate, so intermediate fillings
produced by the moves below are ordinary values too.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

from .order import HessenbergFunction, bounce_data
from .symfunc import Partition, SymExpansion, conjugate, is_partition, partitions, strip

Tableau = tuple[tuple[int, ...], ...]


class ShapeMismatch(ValueError):
    pass


def make_tableau(rows: Sequence[Sequence[int]]) -> Tableau:
    out = [tuple(r) for r in rows]
    while out and not out[-1]:
        out.pop()
    return tuple(out)


def shape(T: Tableau) -> Partition:
    return tuple(len(r) for r in T)


def labels(T: Tableau) -> list[int]:
    return [x for r in T for x in r]


def parse_tableau(text: str) -> Tableau:
    """Parse ``"2,1,5,6;4,3;8,7"``."""
    text = text.strip()
    if not text:
        return ()
    rows = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        rows.append([int(tok) for tok in chunk.split(",")] if chunk else [])
    return make_tableau(rows)


def format_tableau(T: Tableau) -> str:
    return ";".join(",".join(map(str, r)) for r in T)


def is_f_tableau(f: HessenbergFunction, T: Tableau) -> bool:
    """Columns are chains read downwards; a right neighbour never precedes its left neighbour."""
    n = len(f.values)
    seen = set()
    prev_len = None
    for row in T:
        if not row or (prev_len is not None and len(row) > prev_len):
            return False
        prev_len = len(row)
        for x in row:
            if x < 1 or x > n or x in seen:
                return False
            seen.add(x)
    prec = f.prec
    for r, row in enumerate(T):
        for c in range(1, len(row)):
            if prec[row[c]][row[c - 1]]:
                return False
        if r > 0:
            above = T[r - 1]
            for c, x in enumerate(row):
                if not prec[above[c]][x]:
                    return False
    return True


def _cells(lam: Partition) -> list[tuple[int, int]]:
    cols = conjugate(lam)
    return [(r, c) for c, height in enumerate(cols) for r in range(height)]


def _search(f: HessenbergFunction, lam: Partition, emit) -> None:
    # Column-major fill: each cell's candidates are the unused labels above-chained
    # to the cell over it and not preceding the cell to its left.
    n = f.n
    cells = _cells(lam)
    grid = [[0] * p for p in lam]
    succ, pred = f.succ_mask, f.pred_mask
    full = ((1 << (n + 1)) - 1) & ~1

    def rec(idx: int, unused: int) -> None:
        if idx == len(cells):
            emit(grid)
            return
        r, c = cells[idx]
        cand = unused
        if r > 0:
            cand &= succ[grid[r - 1][c]]
        if c > 0:
            cand &= ~pred[grid[r][c - 1]]
        while cand:
            low = cand & -cand
            x = low.bit_length() - 1
            grid[r][c] = x
            rec(idx + 1, unused & ~low)
            cand ^= low

    rec(0, full)


def _normal_shape(f: HessenbergFunction, lam: Sequence[int]) -> Partition | None:
    lam = tuple(lam)
    if any(p < 0 for p in lam) or not is_partition(lam) or sum(lam) != f.n:
        return None
    return strip(lam)


@lru_cache(maxsize=4096)
def enumerate_tableaux(f: HessenbergFunction, lam: tuple[int, ...]) -> tuple[Tableau, ...]:
    """All f-tableaux of shape lam, in row-major lexicographic order.

    A shape that is not a partition of n (negative parts, increases) gives
    the empty tuple.
    """
    shp = _normal_shape(f, lam)
    if shp is None:
        return ()
    out: list[Tableau] = []
    _search(f, shp, lambda g: out.append(tuple(tuple(row) for row in g)))
    out.sort(key=lambda T: [x for r in T for x in r])
    return tuple(out)


@lru_cache(maxsize=4096)
def count_d(f: HessenbergFunction, lam: tuple[int, ...]) -> int:
    shp = _normal_shape(f, lam)
    if shp is None:
        return 0
    total = 0

    def bump(_grid) -> None:
        nonlocal total
        total += 1

    _search(f, shp, bump)
    return total


def gasharov_expansion(f: HessenbergFunction) -> SymExpansion:
    """omega X_{G(f)} as sum_lambda d_lambda s_lambda."""
    b = bounce_data(f).bounce_number
    terms = {lam: count_d(f, lam) for lam in partitions(f.n, max_len=b)}
    return SymExpansion("s", terms)


def sigma_move(T: Tableau, j: int, i: int, width: int = 1) -> Tableau:
    """Move the last ``width`` entries of row j (1-based) to the end of row i, keeping order."""
    if width not in (1, 2):
        raise ValueError("width must be 1 or 2")
    if not 1 <= i < j:
        raise ValueError(f"need 1 <= i < j, got i={i}, j={j}")
    rows = [list(r) for r in T]
    while len(rows) < j:
        rows.append([])
    if len(rows[j - 1]) < width:
        raise ValueError(f"row {j} has fewer than {width} entries")
    moved = rows[j - 1][-width:]
    del rows[j - 1][-width:]
    rows[i - 1].extend(moved)
    return make_tableau(rows)


def sigma_preimage(T: Tableau, j: int, i: int, width: int = 1) -> Tableau | None:
    """The unique candidate U with sigma_move(U, j, i, width) == T, or None."""
    rows = [list(r) for r in T]
    while len(rows) < j:
        rows.append([])
    if len(rows[i - 1]) < width:
        return None
    moved = rows[i - 1][-width:]
    del rows[i - 1][-width:]
    rows[j - 1].extend(moved)
    return make_tableau(rows)


def in_sigma_image(f: HessenbergFunction, T: Tableau, j: int, i: int, width: int = 1) -> bool:
    """Whether T = sigma_move(U) for some valid f-tableau U (the move is injective)."""
    U = sigma_preimage(T, j, i, width)
    return U is not None and is_f_tableau(f, U)


def is_rectangle(R: Tableau) -> bool:
    return len({len(r) for r in R}) <= 1


def concat(R: Tableau, S: Tableau) -> Tableau:
    """Place the rectangle R to the left of S."""
    if not R:
        return make_tableau(S)
    if not is_rectangle(R):
        raise ShapeMismatch(f"left block is not a rectangle: shape {shape(R)}")
    if len(S) > len(R):
        raise ShapeMismatch(f"right block has {len(S)} rows, left block only {len(R)}")
    return make_tableau([tuple(R[l]) + (tuple(S[l]) if l < len(S) else ()) for l in range(len(R))])


def split_left(T: Tableau, width: int) -> tuple[Tableau, Tableau]:
    """Split off the first ``width`` columns, which must form a rectangle."""
    if width < 0:
        raise ShapeMismatch("negative width")
    if width == 0:
        return (), make_tableau(T)
    if any(len(r) < width for r in T):
        raise ShapeMismatch(f"shape {shape(T)} has a row shorter than {width}")
    R = tuple(tuple(r[:width]) for r in T)
    S = make_tableau([r[width:] for r in T])
    return R, S


def iter_all_fillings(n: int, lam: Partition) -> Iterator[Tableau]:
    """Every filling of lam with 1..n (no validity filter); small-n oracle only."""
    from itertools import permutations

    for perm in permutations(range(1, n + 1)):
        rows, pos = [], 0
        for p in lam:
            rows.append(tuple(perm[pos:pos + p]))
            pos += p
        yield tuple(rows)
