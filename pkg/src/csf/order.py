"""Hessenberg functions, natural unit interval orders and bounce paths.

Labels are 1-based everywhere, matching the usual combinatorial convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence


class HessenbergError(ValueError):
    pass


class EmptyInput(HessenbergError):
    pass


class NotNonDecreasing(HessenbergError):
    pass


class BelowDiagonal(HessenbergError):
    pass


class OutOfRange(HessenbergError):
    pass


@dataclass(frozen=True)
class HessenbergFunction:
    """A non-decreasing map f: [n] -> [n] with i <= f(i).

    The order table ``prec[i][j]`` (i precedes j iff f(i) < j) and the
    bitmask forms ``succ_mask``/``pred_mask`` are built once; tableau
    enumeration hits them constantly.
    """

    values: tuple[int, ...]
    prec: tuple[tuple[bool, ...], ...] = field(init=False, repr=False, compare=False)
    succ_mask: tuple[int, ...] = field(init=False, repr=False, compare=False)
    pred_mask: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        vals = tuple(int(v) for v in self.values)
        _validate(vals)
        object.__setattr__(self, "values", vals)
        n = len(vals)
        f = (0,) + vals
        prec = tuple(
            tuple(i > 0 and j > 0 and f[i] < j for j in range(n + 1)) for i in range(n + 1)
        )
        succ = [0] * (n + 1)
        pred = [0] * (n + 1)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if prec[i][j]:
                    succ[i] |= 1 << j
                    pred[j] |= 1 << i
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "succ_mask", tuple(succ))
        object.__setattr__(self, "pred_mask", tuple(pred))

    @property
    def n(self) -> int:
        return len(self.values)

    def __call__(self, i: int) -> int:
        return self.values[i - 1]

    def __str__(self) -> str:
        return ",".join(map(str, self.values))

    @property
    def bounce(self) -> int:
        return bounce_data(self).bounce_number


def _validate(vals: Sequence[int]) -> None:
    if not vals:
        raise EmptyInput("a Hessenberg function needs at least one value")
    n = len(vals)
    for i, v in enumerate(vals, start=1):
        if v > n or v < 1:
            raise OutOfRange(f"f({i})={v} is outside [1, {n}]")
    for i in range(1, n):
        if vals[i] < vals[i - 1]:
            raise NotNonDecreasing(f"f({i})={vals[i - 1]} > f({i + 1})={vals[i]}")
    for i, v in enumerate(vals, start=1):
        if v < i:
            raise BelowDiagonal(f"f({i})={v} < {i}")


def make_hessenberg(values: Sequence[int]) -> HessenbergFunction:
    return HessenbergFunction(tuple(values))


def parse_hessenberg(text: str) -> HessenbergFunction:
    """Parse the comma-separated form, e.g. ``"2,3,4,4"``."""
    text = text.strip()
    if not text:
        raise EmptyInput("empty Hessenberg function string")
    vals, pos = [], 0
    for tok in text.split(","):
        try:
            vals.append(int(tok))
        except ValueError:
            raise HessenbergError(f"cannot parse {tok.strip()!r} at position {pos + 1} of {text!r}") from None
        pos += len(tok) + 1
    return make_hessenberg(vals)


def _enumerate_values(n: int) -> Iterator[tuple[int, ...]]:
    vals = [0] * n

    def rec(i: int, lo: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(vals)
            return
        for v in range(max(lo, i + 1), n + 1):
            vals[i] = v
            yield from rec(i + 1, v)

    yield from rec(0, 1)


def enumerate_hessenberg(n: int, bounce_filter: int | None = None) -> list[HessenbergFunction]:
    """All Hessenberg functions of size n in lexicographic order of values."""
    if n < 1:
        raise ValueError("n must be positive")
    out = [HessenbergFunction(v) for v in _enumerate_values(n)]
    if bounce_filter is not None:
        out = [f for f in out if bounce_data(f).bounce_number == bounce_filter]
    return out


def precedes(f: HessenbergFunction, i: int, j: int) -> bool:
    n = f.n
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"labels ({i}, {j}) outside [1, {n}]")
    return f.prec[i][j]


@dataclass(frozen=True)
class BounceData:
    points: tuple[int, ...]
    parts: tuple[tuple[int, ...], ...]

    @property
    def bounce_number(self) -> int:
        return len(self.points)

    def part_of(self, label: int) -> int:
        """1-based index l of the part P_l containing ``label``."""
        for l, x in enumerate(self.points, start=1):
            if label <= x:
                return l
        raise IndexError(label)


_BOUNCE_CACHE: dict[tuple[int, ...], BounceData] = {}


def bounce_data(f: HessenbergFunction) -> BounceData:
    cached = _BOUNCE_CACHE.get(f.values)
    if cached is not None:
        return cached
    n = f.n
    points = [f(1)]
    while points[-1] < n:
        points.append(f(points[-1] + 1))
    parts = []
    prev = 0
    for x in points:
        parts.append(tuple(range(prev + 1, x + 1)))
        prev = x
    bd = BounceData(tuple(points), tuple(parts))
    _BOUNCE_CACHE[f.values] = bd
    return bd


def graph_edges(f: HessenbergFunction) -> set[tuple[int, int]]:
    """Edges {i, j}, i < j, of the incomparability graph G(f)."""
    return {(i, j) for i in range(1, f.n + 1) for j in range(i + 1, f(i) + 1)}


def square_below_path(f: HessenbergFunction, i: int, j: int) -> bool:
    if i >= j:
        raise ValueError(f"need i < j, got ({i}, {j})")
    if not (1 <= i and j <= f.n):
        raise IndexError(f"labels ({i}, {j}) outside [1, {f.n}]")
    # The (i,j)-square sits below the Dyck path iff the east step at column i is at height >= j.
    return f(i) >= j


def dyck_word(f: HessenbergFunction) -> str:
    """The Dyck path as a string of N/E steps from (0,0) to (n,n)."""
    out = []
    prev = 0
    for v in f.values:
        out.append("N" * (v - prev) + "E")
        prev = v
    return "".join(out)


def longest_chain(f: HessenbergFunction) -> int:
    n = f.n
    best = [1] * (n + 1)
    for j in range(1, n + 1):
        for i in range(1, j):
            if f.prec[i][j]:
                best[j] = max(best[j], best[i] + 1)
    return max(best[1:])


def catalan(n: int) -> int:
    from math import comb

    return comb(2 * n, n) // (n + 1)
