"""Exact symmetric-function expansions and a brute-force coloring oracle.

Expansions are sparse maps partition -> coefficient in one of the e, h, s, m
bases.  A coefficient is either a Python int or a t-polynomial stored as a
dense tuple of ints indexed by degree.  Nothing here uses floating point.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .order import HessenbergFunction, graph_edges

Partition = tuple[int, ...]
TPoly = tuple[int, ...]
Coeff = Union[int, TPoly]

BASES = ("e", "h", "s", "m")


class WrongBasis(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


# --------------------------------------------------------------------------
# partitions

def is_partition(parts: Sequence[int]) -> bool:
    """True for a weakly decreasing sequence of non-negative ints."""
    return all(p >= 0 for p in parts) and all(a >= b for a, b in zip(parts, parts[1:]))


def strip(parts: Sequence[int]) -> Partition:
    """Drop trailing zeros."""
    parts = list(parts)
    while parts and parts[-1] == 0:
        parts.pop()
    return tuple(parts)


def pad(parts: Sequence[int], length: int) -> tuple[int, ...]:
    if len(parts) > length:
        raise ValueError(f"{tuple(parts)} has more than {length} parts")
    return tuple(parts) + (0,) * (length - len(parts))


def partitions(n: int, max_len: int | None = None, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of n in reverse-lexicographic order: (n), (n-1,1), ..."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        rest_len = None if max_len is None else max_len - 1
        for rest in partitions(n - first, rest_len, first):
            yield (first,) + rest


def conjugate(lam: Sequence[int]) -> Partition:
    lam = strip(lam)
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p >= i) for i in range(1, lam[0] + 1))


def revlex_key(lam: Partition) -> tuple[int, ...]:
    return tuple(-p for p in lam)


# --------------------------------------------------------------------------
# t-polynomial helpers

def tp_trim(a: Iterable[int]) -> TPoly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def tp_add(a: Coeff, b: Coeff) -> Coeff:
    if isinstance(a, int) and isinstance(b, int):
        return a + b
    a, b = _as_tp(a), _as_tp(b)
    size = max(len(a), len(b))
    return tp_trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(size))


def tp_scale(a: Coeff, c: int) -> Coeff:
    if isinstance(a, int):
        return a * c
    return tp_trim(x * c for x in a)


def tp_at_one(a: Coeff) -> int:
    return a if isinstance(a, int) else sum(a)


def _as_tp(a: Coeff) -> TPoly:
    return (a,) if isinstance(a, int) else a


def _is_zero(a: Coeff) -> bool:
    return a == 0 if isinstance(a, int) else not any(a)


def format_tpoly(a: TPoly) -> str:
    terms = []
    for d, c in enumerate(a):
        if c == 0:
            continue
        if d == 0:
            terms.append(str(c))
        else:
            mono = "t" if d == 1 else f"t^{d}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "(" + " + ".join(terms) + ")" if terms else "0"


# --------------------------------------------------------------------------
# expansions

@dataclass(frozen=True)
class SymExpansion:
    basis: str
    terms: Mapping[Partition, Coeff] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.basis not in BASES:
            raise WrongBasis(f"unknown basis {self.basis!r}")
        clean: dict[Partition, Coeff] = {}
        for lam, c in self.terms.items():
            lam = strip(lam)
            if not is_partition(lam):
                raise ValueError(f"{lam} is not a partition")
            if not isinstance(c, int):
                c = tp_trim(c)
            if not _is_zero(c):
                clean[lam] = c
        weights = {sum(lam) for lam in clean}
        if len(weights) > 1:
            raise ValueError(f"inhomogeneous expansion, weights {sorted(weights)}")
        object.__setattr__(self, "terms", dict(sorted(clean.items(), key=lambda kv: revlex_key(kv[0]))))

    def __getitem__(self, lam: Sequence[int]) -> Coeff:
        return self.terms.get(strip(lam), 0)

    def at_t1(self) -> "SymExpansion":
        return SymExpansion(self.basis, {lam: tp_at_one(c) for lam, c in self.terms.items()})

    def as_basis(self, basis: str) -> "SymExpansion":
        """Same coefficients, different basis label (how omega acts on e <-> h)."""
        return SymExpansion(basis, self.terms)

    def to_json(self) -> dict:
        out = []
        for lam, c in self.terms.items():
            entry: dict = {"partition": list(lam)}
            if isinstance(c, int):
                entry["coeff"] = c
            else:
                entry["coeff_t"] = list(c)
            out.append(entry)
        return {"basis": self.basis, "terms": out}

    @classmethod
    def from_json(cls, data: Mapping) -> "SymExpansion":
        terms: dict[Partition, Coeff] = {}
        for entry in data["terms"]:
            lam = tuple(entry["partition"])
            terms[lam] = entry["coeff"] if "coeff" in entry else tuple(entry["coeff_t"])
        return cls(data["basis"], terms)

    def format(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for idx, (lam, c) in enumerate(self.terms.items()):
            name = f"{self.basis}[{','.join(map(str, lam))}]"
            if isinstance(c, int):
                if idx == 0:
                    pieces.append(f"{c} {name}")
                else:
                    pieces.append(f"{'-' if c < 0 else '+'} {abs(c)} {name}")
            else:
                pieces.append(f"{'' if idx == 0 else '+ '}{format_tpoly(c)} {name}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.format()


def _accumulate(terms: dict, lam: Partition, c: Coeff) -> None:
    terms[lam] = tp_add(terms.get(lam, 0), c)


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _jacobi_trudi(rows: Sequence[int]) -> dict[Partition, int]:
    # det(h_{rows_i - i + j}) by permutation expansion; negative index kills the term, h_0 = 1.
    ell = len(rows)
    terms: dict[Partition, int] = {}
    for perm in itertools.permutations(range(ell)):
        idx = [rows[i] - i + perm[i] for i in range(ell)]
        if any(x < 0 for x in idx):
            continue
        lam = tuple(sorted((x for x in idx if x > 0), reverse=True))
        terms[lam] = terms.get(lam, 0) + _perm_sign(perm)
    return terms


def jacobi_trudi_h(lam: Sequence[int]) -> SymExpansion:
    """Signed h-expansion of s_lam from det(h_{lam_i - i + j})."""
    return SymExpansion("h", _jacobi_trudi(strip(lam)))


def jacobi_trudi_e(lam: Sequence[int]) -> SymExpansion:
    """Signed e-expansion of s_lam from det(e_{lam'_i - i + j})."""
    return SymExpansion("e", _jacobi_trudi(conjugate(lam)))


def _require(X: SymExpansion, basis: str) -> None:
    if X.basis != basis:
        raise WrongBasis(f"expected basis {basis!r}, got {X.basis!r}")


def omega_on_s(X: SymExpansion) -> SymExpansion:
    _require(X, "s")
    return SymExpansion("s", {conjugate(lam): c for lam, c in X.terms.items()})


def omega(X: SymExpansion) -> SymExpansion:
    if X.basis == "s":
        return omega_on_s(X)
    if X.basis in ("e", "h"):
        return X.as_basis("h" if X.basis == "e" else "e")
    raise WrongBasis("omega on the m basis is not supported")


def s_to_h(X: SymExpansion) -> SymExpansion:
    _require(X, "s")
    terms: dict[Partition, Coeff] = {}
    for lam, c in X.terms.items():
        for mu, sign in _jacobi_trudi(lam).items():
            _accumulate(terms, mu, tp_scale(c, sign))
    return SymExpansion("h", terms)


@lru_cache(maxsize=None)
def kostka(lam: Partition, mu: Partition) -> int:
    """Number of semistandard tableaux of shape lam and content mu."""
    lam, mu = strip(lam), strip(mu)
    if sum(lam) != sum(mu):
        return 0
    if not mu:
        return 1
    last = mu[-1]
    total = 0
    # remove a horizontal strip of size `last` holding the largest letter
    for inner in _horizontal_strip_inner(lam, last):
        total += kostka(inner, mu[:-1])
    return total


def _horizontal_strip_inner(lam: Partition, size: int) -> Iterator[Partition]:
    ell = len(lam)

    def rec(i: int, remaining: int, acc: list[int]) -> Iterator[Partition]:
        if i == ell:
            if remaining == 0:
                yield strip(acc)
            return
        lower = lam[i + 1] if i + 1 < ell else 0
        for take in range(0, min(remaining, lam[i] - lower) + 1):
            acc.append(lam[i] - take)
            yield from rec(i + 1, remaining - take, acc)
            acc.pop()

    yield from rec(0, size, [])


def h_to_s(X: SymExpansion) -> SymExpansion:
    _require(X, "h")
    terms: dict[Partition, Coeff] = {}
    for mu, c in X.terms.items():
        for lam in partitions(sum(mu)):
            k = kostka(lam, mu)
            if k:
                _accumulate(terms, lam, tp_scale(c, k))
    return SymExpansion("s", terms)


# --------------------------------------------------------------------------
# polynomials in finitely many variables

Monomial = tuple[tuple[int, ...], int]


@dataclass(frozen=True)
class OraclePolynomial:
    """Sparse polynomial: (x-exponent vector, t-degree) -> integer coefficient."""

    num_vars: int
    terms: Mapping[Monomial, int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", {k: v for k, v in sorted(self.terms.items()) if v})

    def at_t1(self) -> "OraclePolynomial":
        acc: Counter = Counter()
        for (exps, _), c in self.terms.items():
            acc[(exps, 0)] += c
        return OraclePolynomial(self.num_vars, acc)

    def dominant(self) -> "OraclePolynomial":
        """Restriction to monomials with weakly decreasing exponents."""
        return OraclePolynomial(
            self.num_vars, {k: v for k, v in self.terms.items() if is_partition(k[0])}
        )

    def x_coefficient(self, exps: Sequence[int]) -> TPoly:
        exps = tuple(exps)
        degs = {d: c for (e, d), c in self.terms.items() if e == exps}
        if not degs:
            return ()
        return tp_trim(degs.get(d, 0) for d in range(max(degs) + 1))

    def is_symmetric(self) -> bool:
        for (exps, d), c in self.terms.items():
            for i in range(len(exps) - 1):
                swapped = exps[:i] + (exps[i + 1], exps[i]) + exps[i + 2:]
                if self.terms.get((swapped, d), 0) != c:
                    return False
        return True

    def degrees(self) -> set[int]:
        return {sum(e) for e, _ in self.terms}


def _poly_mul(a: Mapping[tuple[int, ...], int], b: Mapping[tuple[int, ...], int]) -> dict[tuple[int, ...], int]:
    out: dict[tuple[int, ...], int] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            out[key] = out.get(key, 0) + ca * cb
    return out


@lru_cache(maxsize=None)
def _elementary(k: int, N: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    out = []
    for combo in itertools.combinations(range(N), k):
        exps = [0] * N
        for i in combo:
            exps[i] = 1
        out.append((tuple(exps), 1))
    return tuple(out)


@lru_cache(maxsize=None)
def _complete(k: int, N: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    out = []
    for combo in itertools.combinations_with_replacement(range(N), k):
        exps = [0] * N
        for i in combo:
            exps[i] += 1
        out.append((tuple(exps), 1))
    return tuple(out)


@lru_cache(maxsize=None)
def _basis_poly(basis: str, lam: Partition, N: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    if basis == "m":
        padded = pad(lam, N) if len(lam) <= N else None
        if padded is None:
            return ()
        return tuple((p, 1) for p in sorted(set(itertools.permutations(padded))))
    factor = _elementary if basis == "e" else _complete
    acc: dict[tuple[int, ...], int] = {(0,) * N: 1}
    for part in lam:
        acc = _poly_mul(acc, dict(factor(part, N)))
    return tuple(sorted(acc.items()))


def expansion_to_polynomial(X: SymExpansion, num_vars: int, dominant_only: bool = False) -> OraclePolynomial:
    """Expand X into monomials in x_1..x_N; t-coefficients become t-degrees."""
    if X.basis == "s":
        X = s_to_h(X)
    acc: Counter = Counter()
    for lam, c in X.terms.items():
        tcoeffs = _as_tp(c)
        for exps, mult in _basis_poly(X.basis, lam, num_vars):
            if dominant_only and not is_partition(exps):
                continue
            for d, tc in enumerate(tcoeffs):
                if tc:
                    acc[(exps, d)] += tc * mult
    return OraclePolynomial(num_vars, acc)


# --------------------------------------------------------------------------
# brute-force chromatic (quasi)symmetric function

DEFAULT_COLORING_BUDGET = 5_000_000


def _lower_neighbors(f: HessenbergFunction) -> list[list[int]]:
    nb: list[list[int]] = [[] for _ in range(f.n + 1)]
    for i, j in graph_edges(f):
        nb[j].append(i)
    return nb


def brute_chromatic(
    f: HessenbergFunction,
    num_vars: int,
    with_t: bool = False,
    dominant_only: bool = False,
    budget: int = DEFAULT_COLORING_BUDGET,
) -> OraclePolynomial:
    """Sum of t^asc(k) x_k over proper colorings k: [n] -> [num_vars].

    With ``dominant_only`` only colorings whose color content is weakly
    decreasing are generated (one color class at a time); for a symmetric
    function these monomials determine everything else.
    """
    if num_vars < 1:
        raise ValueError("num_vars must be positive")
    n = f.n
    if not dominant_only and num_vars ** n > budget:
        raise BudgetExceeded(f"{num_vars}^{n} colorings exceeds budget {budget}")
    if dominant_only and not with_t:
        return OraclePolynomial(num_vars, _dominant_counts(f, num_vars))
    if dominant_only:
        acc = _dominant_colorings(f, num_vars)
    else:
        acc = _all_colorings(f, num_vars)
    if not with_t:
        flat: Counter = Counter()
        for (exps, _), c in acc.items():
            flat[(exps, 0)] += c
        acc = flat
    return OraclePolynomial(num_vars, acc)


def _all_colorings(f: HessenbergFunction, N: int) -> Counter:
    n = f.n
    lower = _lower_neighbors(f)
    color = [0] * (n + 1)
    exps = [0] * N
    acc: Counter = Counter()

    def rec(v: int, asc: int) -> None:
        if v > n:
            acc[(tuple(exps), asc)] += 1
            return
        used = [color[u] for u in lower[v]]
        for c in range(N):
            if c in used:
                continue
            color[v] = c
            exps[c] += 1
            rec(v + 1, asc + sum(1 for u in used if u < c))
            exps[c] -= 1

    rec(1, 0)
    return acc


def _dominant_colorings(f: HessenbergFunction, N: int) -> Counter:
    n = f.n
    edges = graph_edges(f)
    adjacent = [[False] * (n + 1) for _ in range(n + 1)]
    for i, j in edges:
        adjacent[i][j] = adjacent[j][i] = True
    color = [0] * (n + 1)
    acc: Counter = Counter()

    def independent(combo: Sequence[int]) -> bool:
        return all(not adjacent[a][b] for a, b in itertools.combinations(combo, 2))

    def rec(c: int, remaining: tuple[int, ...], cap: int, sizes: list[int]) -> None:
        if not remaining:
            asc = sum(1 for i, j in edges if color[i] < color[j])
            acc[(pad(tuple(sizes), N), asc)] += 1
            return
        if c == N:
            return
        for size in range(min(cap, len(remaining)), 0, -1):
            for combo in itertools.combinations(remaining, size):
                if not independent(combo):
                    continue
                for v in combo:
                    color[v] = c
                rest = tuple(v for v in remaining if v not in combo)
                sizes.append(size)
                rec(c + 1, rest, size, sizes)
                sizes.pop()

    rec(0, tuple(range(1, n + 1)), n, [])
    return acc


def _dominant_counts(f: HessenbergFunction, N: int) -> Counter:
    # A coloring with weakly decreasing content lam is an ordered stable set
    # partition with block sizes lam; each unordered one of type lam yields
    # prod(r_i!) of them, r_i being the multiplicities of the sizes.
    from math import factorial

    n = f.n
    adj = [0] * (n + 1)
    for i, j in graph_edges(f):
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    types: Counter = Counter()

    def extend_block(block: int, candidates: int, remaining: int, sizes: list[int]) -> None:
        # block already holds its smallest element; add any subset of larger candidates
        if candidates == 0:
            sizes.append(bin(block).count("1"))
            split(remaining & ~block, sizes)
            sizes.pop()
            return
        low = candidates & -candidates
        rest = candidates ^ low
        extend_block(block, rest, remaining, sizes)
        v = low.bit_length() - 1
        extend_block(block | low, rest & ~adj[v], remaining, sizes)

    def split(remaining: int, sizes: list[int]) -> None:
        if remaining == 0:
            if len(sizes) <= N:
                types[tuple(sorted(sizes, reverse=True))] += 1
            return
        low = remaining & -remaining
        v = low.bit_length() - 1
        extend_block(low, remaining & ~low & ~adj[v], remaining, sizes)

    split(((1 << (n + 1)) - 1) & ~1, [])
    acc: Counter = Counter()
    for lam, count in types.items():
        mult = 1
        for r in Counter(lam).values():
            mult *= factorial(r)
        acc[(pad(lam, N), 0)] += count * mult
    return acc


def m_expansion_from_oracle(P: OraclePolynomial) -> SymExpansion:
    """Read the m-basis expansion off the dominant monomials of a symmetric polynomial.

    Only valid when P has at least as many variables as its degree.
    """
    terms: dict[Partition, Coeff] = {}
    degs = P.degrees()
    if degs and max(degs) > P.num_vars:
        raise ValueError("need at least as many variables as the degree")
    for (exps, d), c in P.terms.items():
        if not is_partition(exps):
            continue
        lam = strip(exps)
        vec = [0] * (d + 1)
        vec[d] = c
        _accumulate(terms, lam, tuple(vec))
    graded = any(isinstance(c, tuple) and len(c) > 1 for c in terms.values())
    if not graded:
        terms = {lam: tp_at_one(c) for lam, c in terms.items()}
    return SymExpansion("m", terms)


@lru_cache(maxsize=None)
def _e_in_m(mu: Partition) -> dict[Partition, int]:
    n = sum(mu)
    poly = _basis_poly("e", mu, n)
    return {strip(exps): c for exps, c in poly if is_partition(exps)}


def m_to_e(X: SymExpansion) -> SymExpansion:
    """Convert an m-expansion to the e basis (e_mu = m_{mu'} + dominance-lower terms)."""
    _require(X, "m")
    rest: dict[Partition, Coeff] = dict(X.terms)
    out: dict[Partition, Coeff] = {}
    while rest:
        lam = min(rest, key=revlex_key)  # lexicographically largest
        c = rest.pop(lam)
        if _is_zero(c):
            continue
        mu = conjugate(lam)
        out[mu] = c
        for nu, k in _e_in_m(mu).items():
            if nu == lam:
                continue
            rest[nu] = tp_add(rest.get(nu, 0), tp_scale(c, -k))
            if _is_zero(rest[nu]):
                del rest[nu]
    return SymExpansion("e", out)


def chromatic_e_expansion(f: HessenbergFunction, with_t: bool = False) -> SymExpansion:
    """e-expansion of X_G(x, t), computed only from enumerated colorings."""
    P = brute_chromatic(f, f.n, with_t=with_t, dominant_only=True)
    return m_to_e(m_expansion_from_oracle(P))


def coefficients_in_h(f: HessenbergFunction, with_t: bool = False) -> SymExpansion:
    """h-expansion of omega X_{G(f)}.

    At t = 1 this is Gasharov's Schur expansion pushed through Jacobi-Trudi;
    the t-graded version has no tableau formula here and is read off the
    coloring oracle instead.
    """
    if with_t:
        return chromatic_e_expansion(f, with_t=True).as_basis("h")
    from .tableaux import gasharov_expansion

    return s_to_h(gasharov_expansion(f))
