"""Signed compositions from the 3x3 Jacobi-Trudi determinant and the h-coefficients they produce.

For a partition lam with at most three parts, expanding det(h_{lam_i - i + j})
gives six signed compositions S(lam).  Grouping them by the partition they
sort to yields the coefficient c_mu of h_mu in omega X_{G(f)} as a signed sum
of tableau counts d_lam.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .order import HessenbergFunction, bounce_data
from .symfunc import Partition, is_partition, partitions, strip
from .tableaux import count_d

Composition = tuple[int, int, int]


class BounceTooLarge(ValueError):
    pass


class CaseTag(str, Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"


@dataclass(frozen=True)
class SignedComposition:
    parts: Composition
    sign: int
    source: Composition | None = None


# (shift, sign) pairs: entry = lam + shift
_S_SHIFTS: tuple[tuple[Composition, int], ...] = (
    ((0, 0, 0), +1),
    ((0, 1, -1), -1),
    ((1, -1, 0), -1),
    ((1, 1, -2), +1),
    ((2, -1, -1), +1),
    ((2, 0, -2), -1),
)


def pad3(parts: Sequence[int]) -> Composition:
    parts = tuple(parts)
    while len(parts) > 3 and parts[-1] == 0:
        parts = parts[:-1]
    if len(parts) > 3:
        raise ValueError(f"{parts} has more than three parts")
    return parts + (0,) * (3 - len(parts))  # type: ignore[return-value]


def is_partition3(alpha: Sequence[int]) -> bool:
    return all(p >= 0 for p in alpha) and is_partition(alpha)


def signed_set_S(lam: Sequence[int]) -> tuple[SignedComposition, ...]:
    lam3 = pad3(lam)
    return tuple(
        SignedComposition(tuple(l + s for l, s in zip(lam3, shift)), sign, lam3)  # type: ignore[arg-type]
        for shift, sign in _S_SHIFTS
    )


def case_of(mu: Sequence[int]) -> CaseTag:
    m1, m2, m3 = pad3(mu)
    first = m1 == m2 + 1
    second = m2 == m3 + 1
    if first and second:
        return CaseTag.IV
    if first:
        return CaseTag.II
    if second:
        return CaseTag.III
    return CaseTag.I


def c_set(mu: Sequence[int]) -> tuple[Composition, ...]:
    """Compositions alpha in the signed family whose sorted parts equal mu."""
    m1, m2, m3 = pad3(mu)
    out: list[Composition] = [(m1, m2, m3)]
    tag = case_of(mu)
    if tag in (CaseTag.II, CaseTag.IV):
        out.append((m2, m1, m3))
    if tag in (CaseTag.III, CaseTag.IV):
        out.append((m1, m3, m2))
    return tuple(out)


# T(alpha): compositions lam with alpha in S(lam), in display order
_T_SHIFTS: tuple[Composition, ...] = (
    (-2, 0, 2),
    (-2, 1, 1),
    (-1, -1, 2),
    (-1, 1, 0),
    (0, -1, 1),
    (0, 0, 0),
)


def t_set(alpha: Sequence[int]) -> tuple[SignedComposition, ...]:
    """All six candidates lam with alpha in S(lam), signed by sgn(alpha, lam)."""
    a = pad3(alpha)
    out = []
    for shift in _T_SHIFTS:
        lam = tuple(x + s for x, s in zip(a, shift))
        out.append(SignedComposition(lam, _sign_in_S(a, lam), a))  # type: ignore[arg-type]
    return tuple(out)


def _sign_in_S(alpha: Composition, lam: Sequence[int]) -> int:
    # sign read off from where alpha sits in S(lam); lam need not be a partition here
    for shift, sign in _S_SHIFTS:
        if tuple(l + s for l, s in zip(lam, shift)) == alpha:
            return sign
    raise AssertionError(f"{alpha} not in S({tuple(lam)})")


def k_set(alpha: Sequence[int], n: int) -> tuple[tuple[Partition, int], ...]:
    """Partitions lam of n with at most three parts and alpha in S(lam), with sgn(alpha, lam)."""
    a = pad3(alpha)
    if sum(a) != n:
        raise ValueError(f"{a} does not sum to {n}")
    return tuple((sc.parts, sc.sign) for sc in t_set(a) if is_partition3(sc.parts))


def _guard(f: HessenbergFunction) -> None:
    b = bounce_data(f).bounce_number
    if b > 3:
        raise BounceTooLarge(f"bounce number {b} > 3 for f={f}")


def coefficient_c(f: HessenbergFunction, mu: Sequence[int]) -> int:
    """c_mu as the signed sum of d_lam over the alpha in c_set(mu) and lam in k_set(alpha)."""
    _guard(f)
    mu3 = pad3(mu)
    if sum(mu3) != f.n or not is_partition3(mu3):
        raise ValueError(f"{tuple(mu)} is not a partition of {f.n}")
    total = 0
    for alpha in c_set(mu3):
        for lam, sign in k_set(alpha, f.n):
            total += sign * count_d(f, lam)
    return total


def all_coefficients(f: HessenbergFunction) -> dict[Partition, int]:
    """c_mu for every partition mu of n with at most three parts."""
    _guard(f)
    return {mu: coefficient_c(f, mu) for mu in partitions(f.n, max_len=3)}


# --------------------------------------------------------------------------
# case diagrams

@dataclass(frozen=True)
class DiagramNode:
    alpha: Composition
    shape: Composition
    sign: int
    obsolete: bool

    @property
    def key(self) -> tuple[Composition, Composition]:
        return (self.alpha, self.shape)


@dataclass(frozen=True)
class DiagramArrow:
    source: int
    target: int
    j: int
    i: int
    k: int


@dataclass(frozen=True)
class CaseDiagram:
    mu: Composition
    case: CaseTag
    nodes: tuple[DiagramNode, ...]
    arrows: tuple[DiagramArrow, ...]

    def live_nodes(self) -> tuple[DiagramNode, ...]:
        return tuple(nd for nd in self.nodes if not nd.obsolete)

    def node(self, alpha: Sequence[int], shape: Sequence[int]) -> DiagramNode:
        key = (pad3(alpha), pad3(shape) if all(p >= 0 for p in shape) else tuple(shape))
        for nd in self.nodes:
            if nd.key == key:
                return nd
        raise KeyError(key)

    def to_json(self) -> dict:
        return {
            "mu": list(strip(self.mu)),
            "case": self.case.value,
            "nodes": [
                {"alpha": list(nd.alpha), "shape": list(nd.shape), "sign": nd.sign, "obsolete": nd.obsolete}
                for nd in self.nodes
            ],
            "arrows": [
                {"from": a.source, "to": a.target, "j": a.j, "i": a.i, "k": a.k} for a in self.arrows
            ],
        }


def _move_label(src: Composition, dst: Composition) -> tuple[int, int, int] | None:
    diff = [d - s for s, d in zip(src, dst)]
    nonzero = [idx for idx, v in enumerate(diff) if v]
    if len(nonzero) != 2:
        return None
    i, j = nonzero
    k = diff[i]
    if k in (1, 2) and diff[j] == -k:
        return (j + 1, i + 1, k)
    return None


def case_diagram(mu: Sequence[int]) -> CaseDiagram:
    mu3 = pad3(mu)
    nodes = []
    for alpha in c_set(mu3):
        for sc in t_set(alpha):
            nodes.append(DiagramNode(alpha, sc.parts, sc.sign, not is_partition3(sc.parts)))
    arrows = []
    for s_idx, src in enumerate(nodes):
        for t_idx, dst in enumerate(nodes):
            label = _move_label(src.shape, dst.shape)
            if label is not None:
                arrows.append(DiagramArrow(s_idx, t_idx, *label))
    return CaseDiagram(mu3, case_of(mu3), tuple(nodes), tuple(arrows))
