"""Sign-reversing injections that cancel the negative terms of c_mu.

Every negative tableau set in a case diagram is mapped injectively into a
positive one.  Two layers:

* row moves sigma_{3->1} pair whole sets; what they leave behind are the
  "tilde" sets, always built by literal set difference;
* on the tilde sets, the finer maps act on the part of a tableau to the right
  of its first mu_3 columns (the "reduced" tableau S) and the untouched
  3 x mu_3 block is glued back afterwards.

The reduced maps below return a :class:`MapResult` and never check their own
output; the orchestration in :func:`match_coefficient` audits validity,
codomain membership, injectivity and disjointness, collecting every
counterexample instead of stopping.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

from .coefficients import (
    BounceTooLarge,
    CaseDiagram,
    CaseTag,
    Composition,
    case_diagram,
    is_partition3,
    pad3,
)
from .order import HessenbergFunction, bounce_data
from .tableaux import (
    Tableau,
    concat,
    enumerate_tableaux,
    in_sigma_image,
    is_f_tableau,
    make_tableau,
    shape,
    sigma_move,
    split_left,
)


class PreconditionViolated(ValueError):
    pass


class CaseMismatch(ValueError):
    pass


class BounceMismatch(ValueError):
    pass


class MapResult(NamedTuple):
    output: Tableau
    subcase: str
    intermediates: tuple[tuple[str, Tableau], ...] = ()


class Tag(NamedTuple):
    """Which part of the first residual map's image a tableau lies in.

    kind 1 is the image of subcase <1>; kind 2 with index i the image of
    <2-i>, index None standing for <2-inf>.
    """

    kind: int
    index: int | None = None

    def __str__(self) -> str:
        if self.kind == 1:
            return "+1"
        return f"+2({'inf' if self.index is None else self.index})"


Classifier = Callable[[Tableau], "Tag | None"]


@dataclass(frozen=True)
class ReducedContext:
    m: int
    k: int
    case: CaseTag
    rectangle_width: int


@dataclass(frozen=True)
class TildeSet:
    shape: tuple[int, ...]
    sign: int
    members: tuple[Tableau, ...]
    removed_via: str


@dataclass(frozen=True)
class MapTrace:
    map: str
    subcase: str
    input: Tableau
    output: Tableau | None
    note: str = ""

    def to_json(self) -> dict:
        from .tableaux import format_tableau

        out = {
            "map": self.map,
            "subcase": self.subcase,
            "input": format_tableau(self.input),
            "output": None if self.output is None else format_tableau(self.output),
        }
        if self.note:
            out["note"] = self.note
        return out


# --------------------------------------------------------------------------
# set-level helpers

def _rows(T: Tableau) -> list[list[int]]:
    return [list(r) for r in T]


def sigma31_image(f: HessenbergFunction, source_shape: Sequence[int], width: int) -> set[Tableau]:
    return {sigma_move(U, 3, 1, width) for U in enumerate_tableaux(f, tuple(source_shape))}


def tilde_set(
    f: HessenbergFunction,
    target_shape: Sequence[int],
    removed_source_shape: Sequence[int],
    width: int = 1,
    sign: int = 1,
) -> TildeSet:
    """T(target) minus sigma_{3->1} (width 1 or 2) applied to T(removed source)."""
    target = tuple(target_shape)
    removed = sigma31_image(f, removed_source_shape, width)
    members = tuple(T for T in enumerate_tableaux(f, target) if T not in removed)
    via = f"sigma31x{width}{tuple(removed_source_shape)}"
    return TildeSet(target, sign, members, via)


def _require_domain(f: HessenbergFunction, S: Tableau, rows: int, removed_width: int) -> None:
    if len(S) != rows or not is_f_tableau(f, S):
        raise PreconditionViolated(f"{S} is not an f-tableau with {rows} rows")
    if in_sigma_image(f, S, 3, 1, removed_width):
        raise PreconditionViolated(f"{S} lies in the removed sigma_31 image")


# --------------------------------------------------------------------------
# Case I, first residual map: shape (m+k, m) -> (m+k+1, m-1)

def sigma21_tilde(f: HessenbergFunction, S: Tableau) -> MapResult:
    """Move one entry from row 2 to row 1, repairing the right end of row 1 if needed."""
    _require_domain(f, S, 2, 1)
    p = f.prec
    row1, row2 = _rows(S)
    m = len(row2)
    k = len(row1) - m

    def b2(j: int) -> int:
        return row2[m - 2 - j]

    def d1_pos(j: int) -> int:
        return m + k - 1 - j

    c2 = row2[m - 1]
    d1 = row1[-1]
    if not p[c2][d1]:
        return MapResult(make_tableau([row1 + [c2], row2[:-1]]), "<1>")
    for i in range(0, min(k - 1, m - 2) + 1):
        if not p[b2(i)][row1[d1_pos(i + 1)]]:
            new1, new2 = row1[:], row2[:-1]
            for j in range(i + 1):
                new1[d1_pos(j)] = b2(j)
                new2[m - 2 - j] = row1[d1_pos(j)]
            return MapResult(make_tableau([new1 + [c2], new2]), f"<2-{i}>")
    # every comparison held: only possible when k - 1 > m - 2
    new1 = row1[:k] + [d1] + row2[: m - 1] + [c2]
    new2 = row1[k + 1: m + k - 1] + [row1[k]]
    return MapResult(make_tableau([new1, new2]), "<2-inf>")


def tag_of_subcase(subcase: str) -> Tag:
    if subcase == "<1>":
        return Tag(1)
    if subcase == "<2-inf>":
        return Tag(2, None)
    return Tag(2, int(subcase[3:-1]))


# --------------------------------------------------------------------------
# Case I, second residual map: shape (m+k+1, m-2, 1) -> (m+k+1, m-1)

@dataclass
class _Names32:
    row1: list[int]
    row2: list[int]
    a3: int
    m: int
    k: int

    @property
    def a1(self) -> int:
        return self.row1[0]

    @property
    def a2(self) -> int:
        return self.row2[0]

    def b1(self, j: int = 0) -> int:
        return self.row1[self.m - 2 - j]

    def b1_pos(self, j: int = 0) -> int:
        return self.m - 2 - j

    def d1_pos(self, j: int = 0) -> int:
        # j = -1 is e1
        return self.m + self.k - 1 - j

    def d1(self, j: int = 0) -> int:
        return self.row1[self.d1_pos(j)]

    @property
    def e1(self) -> int:
        return self.row1[self.m + self.k]

    @property
    def b2_role(self) -> int:
        # b_2^{(m-3)}; when row 2 is just a2 the entry a3 plays this role
        return (self.row2 + [self.a3])[1]


def _names32(S: Tableau) -> _Names32:
    row1, row2, row3 = _rows(S)
    m = len(row2) + 2
    k = len(row1) - m - 1
    return _Names32(row1, row2, row3[0], m, k)


def _type32(f: HessenbergFunction, nm: _Names32) -> int:
    p = f.prec
    if p[nm.b1()][nm.a3]:
        return 1
    if not p[nm.b2_role][nm.b1()]:
        return 2
    return 3


def sigma32_tilde(f: HessenbergFunction, S: Tableau) -> MapResult:
    """Move a3 up into row 2, swapping blocks of row 1 when the plain move is invalid."""
    _require_domain(f, S, 3, 1)
    if len(S[2]) != 1:
        raise PreconditionViolated(f"row 3 of {S} must have one entry")
    p = f.prec
    nm = _names32(S)
    kind = _type32(f, nm)
    row1, row2, a3 = nm.row1[:], nm.row2[:], nm.a3
    if kind == 1:
        return MapResult(make_tableau([row1, row2 + [a3]]), "(1)")
    if kind == 2:
        row1[nm.b1_pos()] = nm.a2
        row2[0] = nm.b1()
        return MapResult(make_tableau([row1, row2 + [a3]]), "(2)")
    if nm.k < 0:
        raise PreconditionViolated("type (3) needs an entry e1 at the end of row 1")
    e1 = nm.e1
    if not p[e1][a3] or p[nm.a2][nm.d1()]:
        row1[nm.b1_pos()] = nm.a2
        row1[nm.d1_pos(-1)] = nm.b1()
        row2[0] = e1
        return MapResult(make_tableau([row1, row2 + [a3]]), "(3-1)")
    for i in range(-1, nm.k + 1):
        if i + 2 > nm.m - 2:
            break
        if not p[nm.d1(i)][nm.b1(i + 2)]:
            left = list(range(nm.b1_pos(i + 1), nm.b1_pos(0) + 1))
            right = list(range(nm.d1_pos(i), nm.d1_pos(-1) + 1))
            lvals = [nm.row1[q] for q in left]
            rvals = [nm.row1[q] for q in right]
            for q, v in zip(left, rvals):
                row1[q] = v
            for q, v in zip(right, lvals):
                row1[q] = v
            return MapResult(make_tableau([row1, row2 + [a3]]), f"(3-2), i={i}")
    raise PreconditionViolated("no index i with d1^(i) not preceding b1^(i+2)")


def phi2_case1(f: HessenbergFunction, S: Tableau, classify: Classifier) -> MapResult:
    """sigma32_tilde, rerouted whenever its value would collide with the first map's image.

    ``classify`` reports the :class:`Tag` of a reduced tableau in the first
    map's image (None when outside it).
    """
    R0 = sigma32_tilde(f, S)
    nm = _names32(S)
    kind = _type32(f, nm)
    m, k, a2, a3 = nm.m, nm.k, nm.a2, nm.a3
    if kind == 3:
        return MapResult(R0.output, f"(3) {R0.subcase}", (("R0", R0.output),))
    t0 = classify(R0.output)
    if kind == 2:
        if t0 is None or t0.kind != 1:
            return MapResult(R0.output, "(2) Q0", (("Q0", R0.output),))
        row1, row2 = nm.row1[:], nm.row2[:]
        row1[nm.b1_pos()] = a2
        row1[nm.d1_pos(-1)] = nm.b1()
        row2[0] = nm.e1
        Q1 = make_tableau([row1, row2 + [a3]])
        return MapResult(Q1, "(2) Q1", (("Q0", R0.output), ("Q1", Q1)))
    if t0 is None or t0.kind != 1:
        return MapResult(R0.output, "(1) R0", (("R0", R0.output),))
    e1 = nm.e1
    row1, row2 = nm.row1[:], nm.row2[:]
    row1[nm.d1_pos(-1)] = a2
    row2[0] = e1
    R1 = make_tableau([row1, row2 + [a3]])
    steps: tuple[tuple[str, Tableau], ...] = (("R0", R0.output), ("R1", R1))
    t1 = classify(R1)
    if t1 is None or t1.kind != 2:
        return MapResult(R1, "(1) R1", steps)
    b2 = lambda j: nm.row2[m - 2 - j]  # noqa: E731  j = 1..m-2
    if t1.index is not None and t1.index < m - 2:
        i = t1.index
        row1, row2 = nm.row1[:], nm.row2[:]
        for j in range(1, i + 1):
            row1[nm.d1_pos(j)] = b2(j)
            row2[m - 2 - j] = nm.d1(j)
        row1[nm.d1_pos(0)] = a3
        R2 = make_tableau([row1, row2 + [nm.d1()]])
        return MapResult(R2, f"(1) R2, R1 in {t1}", steps + (("R2", R2),))
    # t1 is +2(m-2) or +2(inf); both rebuild row 1 from position k on
    head_len = k + 1 if t1.index is not None else k
    row1 = nm.row1[:head_len]
    if t1.index is None:
        row1.append(a3)
    row1.append(e1)
    row1.extend(nm.row2[1:])
    if t1.index is not None:
        row1.append(a3)
    else:
        row1.append(nm.d1(m - 1))
    row1.append(nm.d1(m - 2))
    row2 = [a2] + [nm.d1(j) for j in range(m - 3, 0, -1)] + [nm.d1()]
    R2 = make_tableau([row1, row2])
    return MapResult(R2, f"(1) R2, R1 in {t1}", steps + (("R2", R2),))


# --------------------------------------------------------------------------
# Case II: shape (m+2, m, 1) -> (m+2, m+1)

def phi_case2(f: HessenbergFunction, S: Tableau) -> MapResult:
    _require_domain(f, S, 3, 1)
    p = f.prec
    row1, row2, row3 = _rows(S)
    m = len(row2)
    if len(row1) != m + 2 or len(row3) != 1:
        raise PreconditionViolated(f"shape {shape(S)} is not (m+2, m, 1)")
    a1, a2, a3 = row1[0], row2[0], row3[0]
    d1, e1 = row1[m], row1[m + 1]
    b2 = (row2 + [a3])[1]
    new1, new2 = row1[:], row2[:]
    if p[d1][a3]:
        if not p[a2][e1]:
            sub = "(1-1)"
        else:
            new1[m + 1], new2[0] = a2, e1
            sub = "(1-2)"
    elif not p[b2][d1]:
        if not p[d1][e1]:
            new1[m], new2[0] = a2, d1
            sub = "(2-1)"
        else:
            new1[m], new1[m + 1], new2[0] = a2, d1, e1
            sub = "(2-2)"
    elif p[a1][e1]:
        new1[m], new1[m + 1], new2[0] = a2, d1, e1
        sub = "(3-1)"
    else:
        new1[m], new1[m + 1] = e1, d1
        sub = "(3-2)"
    return MapResult(make_tableau([new1, new2 + [a3]]), sub)


def _fp_case2(f: HessenbergFunction, U: Tableau) -> dict[str, bool]:
    p = f.prec
    row1, row2 = U[0], U[1]
    m = len(row2) - 1
    a1, d1, e1 = row1[0], row1[m], row1[m + 1]
    a2, b2, d2 = row2[0], row2[1], row2[m]
    return {
        "b2<e1": p[b2][e1],
        "a1<d1": p[a1][d1],
        "a2<d2": p[a2][d2],
        "e1<a2": p[e1][a2],
        "e1<d2": p[e1][d2],
    }


FINGERPRINTS_CASE2: dict[str, dict[str, bool]] = {
    "(1-1)": {"b2<e1": False, "a2<d2": True},
    "(1-2)": {"b2<e1": False, "a2<d2": False, "e1<a2": True, "e1<d2": True},
    "(2-1)": {"b2<e1": False, "a2<d2": False, "e1<a2": False},
    "(2-2)": {"b2<e1": False, "a2<d2": False, "e1<a2": True, "e1<d2": False},
    "(3-1)": {"b2<e1": True, "a1<d1": True},
    "(3-2)": {"b2<e1": True, "a1<d1": False},
}


# --------------------------------------------------------------------------
# Case III: shape (2+k, 2) -> (3+k, 1)

def phi_case3(f: HessenbergFunction, T: Tableau) -> MapResult:
    _require_domain(f, T, 2, 1)
    p = f.prec
    row1, row2 = _rows(T)
    if len(row2) != 2:
        raise PreconditionViolated(f"shape {shape(T)} is not (2+k, 2)")
    a1, b1, d1 = row1[0], row1[1], row1[-1]
    a2, b2 = row2
    c1 = (row1 + [a2])[2]
    if not p[b2][d1]:
        if not p[a2][b2]:
            return MapResult(make_tableau([row1 + [b2], [a2]]), "<1-1>")
        return MapResult(make_tableau([row1 + [a2], [b2]]), "<1-2>")
    if not p[a1][b2]:
        if not p[c1][a1]:
            new1 = [b1, a1] + row1[2:] + [a2]
            return MapResult(make_tableau([new1, [b2]]), "<2-1>")
        new1 = row1[:-1] + [a2, b2]
        return MapResult(make_tableau([new1, [d1]]), "<2-2>")
    return MapResult(make_tableau([row1 + [a2], [b2]]), "<2-3>")


def _fp_case3(f: HessenbergFunction, U: Tableau) -> dict[str, bool]:
    p = f.prec
    row1, a2 = U[0], U[1][0]
    a1, b1, d1, e1 = row1[0], row1[1], row1[-2], row1[-1]
    return {"a2<d1": p[a2][d1], "e1<a2": p[e1][a2], "a1<e1": p[a1][e1], "b1<a2": p[b1][a2]}


FINGERPRINTS_CASE3: dict[str, dict[str, bool]] = {
    "<1-1>": {"a2<d1": False, "e1<a2": False},
    "<1-2>": {"a2<d1": False, "e1<a2": True, "a1<e1": True},
    "<2-2>": {"a2<d1": False, "e1<a2": True, "a1<e1": False},
    "<2-1>": {"a2<d1": True, "b1<a2": False},
    "<2-3>": {"a2<d1": True, "b1<a2": True},
}


# --------------------------------------------------------------------------
# Case IV and bounce number two

def phi_case4(f: HessenbergFunction, T: Tableau) -> tuple[Tableau, Tableau]:
    """Rewrite the last column (c1, c2, c3) of a 3-row rectangle as [c1 c2 / c3] or [c1 c3 / c2]."""
    if len(T) != 3 or len({len(r) for r in T}) != 1 or not T[0]:
        raise CaseMismatch(f"shape {shape(T)} is not a 3-row rectangle")
    r1, r2, r3 = _rows(T)
    c2, c3 = r2[-1], r3[-1]
    first = make_tableau([r1 + [c2], r2[:-1] + [c3], r3[:-1]])
    second = make_tableau([r1 + [c3], r2[:-1] + [c2], r3[:-1]])
    return first, second


def phi_bounce2(f: HessenbergFunction, T: Tableau) -> Tableau:
    b = bounce_data(f).bounce_number
    if b != 2:
        raise BounceMismatch(f"bounce number {b}, expected 2")
    return sigma_move(T, 2, 1, 1)


# --------------------------------------------------------------------------
# orchestration

NodeKey = tuple[Composition, Composition]


@dataclass
class MatchingRecord:
    f: HessenbergFunction
    mu: Composition
    case: CaseTag
    diagram: CaseDiagram
    scope: str
    context: ReducedContext | None = None
    sets: dict[NodeKey, tuple[Tableau, ...]] = field(default_factory=dict)
    signs: dict[NodeKey, int] = field(default_factory=dict)
    pairings: list[tuple[MapTrace, NodeKey, NodeKey, str]] = field(default_factory=list)
    codomains: dict[str, frozenset] = field(default_factory=dict)
    counterexamples: list[MapTrace] = field(default_factory=list)
    checks: dict[str, bool] = field(default_factory=dict)
    residual_positive: list[tuple[NodeKey, Tableau]] = field(default_factory=list)
    unmatched_negative: list[tuple[NodeKey, Tableau]] = field(default_factory=list)

    @property
    def signed_sum(self) -> int:
        return sum(self.signs[key] * len(ts) for key, ts in self.sets.items())

    @property
    def residual_count(self) -> int:
        return len(self.residual_positive)

    @property
    def ok(self) -> bool:
        return all(self.checks.values()) and not self.counterexamples

    def set_sizes(self) -> list[dict]:
        return [
            {"alpha": list(a), "shape": list(s), "sign": self.signs[(a, s)], "size": len(self.sets[(a, s)])}
            for (a, s) in self.sets
        ]

    def traces(self) -> list[MapTrace]:
        return [tr for tr, _, _, _ in self.pairings]

    def to_json(self) -> dict:
        from .tableaux import format_tableau

        return {
            "f": list(self.f.values),
            "mu": [p for p in self.mu if p],
            "case": self.case.value,
            "scope": self.scope,
            "diagram": self.diagram.to_json(),
            "pairings": [tr.to_json() for tr in self.traces()],
            "residual_positive": [
                {"shape": list(key[1]), "tableau": format_tableau(T)} for key, T in self.residual_positive
            ],
            "checks": dict(self.checks),
            "counterexamples": [c.to_json() for c in self.counterexamples],
        }


class _Matcher:
    def __init__(self, f: HessenbergFunction, mu: Composition, scope: str) -> None:
        self.f = f
        diagram = case_diagram(mu)
        self.rec = MatchingRecord(f, mu, diagram.case, diagram, scope)
        for nd in diagram.live_nodes():
            self.rec.sets[nd.key] = enumerate_tableaux(f, nd.shape)
            self.rec.signs[nd.key] = nd.sign
        self.fingerprint_failures: list[MapTrace] = []

    def key(self, alpha: Sequence[int], shp: Sequence[int]) -> NodeKey | None:
        k = (pad3(alpha), tuple(shp))
        return k if k in self.rec.sets else None

    def members(self, key: NodeKey | None) -> tuple[Tableau, ...]:
        return self.rec.sets.get(key, ()) if key is not None else ()

    def codomain(self, name: str, members: Sequence[Tableau]) -> None:
        self.rec.codomains[name] = frozenset(members)

    def add(self, trace: MapTrace, src: NodeKey, tgt: NodeKey, codomain: str) -> None:
        self.rec.pairings.append((trace, src, tgt, codomain))

    def fail(self, trace: MapTrace) -> None:
        self.rec.counterexamples.append(trace)

    def sigma31_block(self, src: NodeKey | None, tgt: NodeKey | None, width: int) -> set[Tableau]:
        """Pair all of T(src) into T(tgt) by sigma_{3->1}; return the image."""
        image: set[Tableau] = set()
        if src is None:
            return image
        name = f"sigma31x{width}"
        for T in self.members(src):
            out = sigma_move(T, 3, 1, width)
            image.add(out)
            if tgt is None:
                self.fail(MapTrace(name, "", T, out, "target node has no tableaux"))
                continue
            self.add(MapTrace(name, "", T, out), src, tgt, f"T{tgt[1]}")
        if tgt is not None:
            self.codomain(f"T{tgt[1]}", self.members(tgt))
        return image

    def reduced(
        self,
        name: str,
        src: NodeKey,
        tgt: NodeKey,
        domain: Sequence[Tableau],
        codomain_name: str,
        width: int,
        apply: Callable[[Tableau], MapResult],
        codomain_removed_width: int,
        fingerprints: tuple[Callable, dict] | None = None,
        on_result: Callable[[Tableau, Tableau, MapResult], None] | None = None,
    ) -> None:
        f = self.f
        codomain = self.rec.codomains[codomain_name]
        for T in domain:
            R, S = split_left(T, width)
            try:
                res = apply(S)
            except PreconditionViolated as exc:
                self.fail(MapTrace(name, "precondition", T, None, str(exc)))
                continue
            out = concat(R, res.output) if len(res.output) <= len(R) or not R else None
            if out is None:
                self.fail(MapTrace(name, res.subcase, T, None, "output has more rows than the left block"))
                continue
            trace = MapTrace(name, res.subcase, T, out)
            for label, inter in res.intermediates:
                if not is_f_tableau(f, inter):
                    self.fail(MapTrace(name, res.subcase, T, concat(R, inter) if R else inter,
                                       f"intermediate {label} is not an f-tableau"))
            reduced_ok = is_f_tableau(f, res.output) and not in_sigma_image(
                f, res.output, 3, 1, codomain_removed_width
            )
            if reduced_ok != (out in codomain):
                self.fail(MapTrace(name, res.subcase, T, out, "reduced and full codomain membership disagree"))
            if fingerprints is not None and out in codomain:
                probe, table = fingerprints
                values = probe(f, res.output)
                expected = table.get(res.subcase, {})
                if any(values[key] != val for key, val in expected.items()):
                    self.fingerprint_failures.append(
                        MapTrace(name, res.subcase, T, out, f"fingerprint {values} != {expected}")
                    )
            if on_result is not None:
                on_result(T, out, res)
            self.add(trace, src, tgt, codomain_name)

    def finish(self) -> MatchingRecord:
        rec = self.rec
        well_defined = codomain_ok = injective = disjoint = True
        used_inputs: dict[tuple[NodeKey, Tableau], int] = {}
        hits: dict[tuple[NodeKey, Tableau], list[str]] = {}
        per_map: dict[tuple[str, NodeKey], set] = {}
        target_sets: dict[NodeKey, frozenset] = {}
        for trace, src, tgt, cod in rec.pairings:
            used_inputs[(src, trace.input)] = used_inputs.get((src, trace.input), 0) + 1
            out = trace.output
            if tgt not in target_sets:
                target_sets[tgt] = frozenset(rec.sets.get(tgt, ()))
            if out is None or out not in target_sets[tgt]:
                well_defined = False
                self.fail(MapTrace(trace.map, trace.subcase, trace.input, out,
                                   "output is not an f-tableau of the target shape"))
                continue
            if out not in rec.codomains.get(cod, frozenset()):
                codomain_ok = False
                self.fail(MapTrace(trace.map, trace.subcase, trace.input, out, f"output outside {cod}"))
            bucket = per_map.setdefault((trace.map, tgt), set())
            if out in bucket:
                injective = False
                self.fail(MapTrace(trace.map, trace.subcase, trace.input, out, "two inputs share this output"))
            bucket.add(out)
            hits.setdefault((tgt, out), []).append(trace.map)
        for (tgt, out), maps in hits.items():
            if len(set(maps)) > 1:
                disjoint = False
                self.fail(MapTrace("+".join(sorted(set(maps))), "", out, out, "images of different maps overlap"))
        if self.fingerprint_failures:
            disjoint = False
            rec.counterexamples.extend(self.fingerprint_failures)
        if any(c > 1 for c in used_inputs.values()):
            well_defined = False

        # cancellation: a pairing consumes its negative end and its positive end
        neg_used: set[tuple[NodeKey, Tableau]] = set()
        pos_used: set[tuple[NodeKey, Tableau]] = set()
        for trace, src, tgt, _ in rec.pairings:
            if trace.output is None:
                continue
            ends = [(src, trace.input), (tgt, trace.output)]
            for key, T in ends:
                sign = rec.signs.get(key, 0)
                if sign < 0:
                    neg_used.add((key, T))
                elif sign > 0:
                    pos_used.add((key, T))
        for key, members in rec.sets.items():
            sign = rec.signs[key]
            for T in members:
                if sign > 0 and (key, T) not in pos_used:
                    rec.residual_positive.append((key, T))
                if sign < 0 and (key, T) not in neg_used:
                    rec.unmatched_negative.append((key, T))
        covers = not rec.unmatched_negative
        for key, T in rec.unmatched_negative:
            self.fail(MapTrace("unmatched", str(key[1]), T, None, "negative tableau left uncancelled"))
        rec.checks = {
            "well_defined": well_defined,
            "injective": injective,
            "disjoint": disjoint,
            "codomain_ok": codomain_ok,
            "covers_negatives": covers,
            "residual_matches": rec.residual_count == rec.signed_sum,
        }
        return rec


def _case1(mt: _Matcher, mu: Composition) -> None:
    f = mt.f
    m1, m2, m3 = mu
    a = mu
    n1 = mt.key(a, (m1 - 2, m2, m3 + 2))
    p2 = mt.key(a, (m1 - 2, m2 + 1, m3 + 1))
    p1 = mt.key(a, (m1 - 1, m2 - 1, m3 + 2))
    n2 = mt.key(a, (m1 - 1, m2 + 1, m3))
    n3 = mt.key(a, (m1, m2 - 1, m3 + 1))
    top = mt.key(a, mu)
    img_n1 = mt.sigma31_block(n1, top, 2)
    img_p1 = mt.sigma31_block(p1, n3, 1)
    img_p2 = mt.sigma31_block(p2, n2, 1)
    tilde_top = [T for T in mt.members(top) if T not in img_n1]
    mt.codomain("tilde_top", tilde_top)
    dom_n2 = [T for T in mt.members(n2) if T not in img_p2]
    dom_n3 = [T for T in mt.members(n3) if T not in img_p1]
    m, k = m2 - m3 + 1, m1 - m2 - 2
    mt.rec.context = ReducedContext(m, k, CaseTag.I, m3)

    tags: dict[Tableau, Tag] = {}

    def remember(_T: Tableau, out: Tableau, res: MapResult) -> None:
        tags[out] = tag_of_subcase(res.subcase)

    if dom_n2:
        mt.reduced("phi1", n2, top, dom_n2, "tilde_top", m3, lambda S: sigma21_tilde(f, S), 2,
                   on_result=remember)
    if dom_n3:
        for T in dom_n3:
            R, S = split_left(T, m3)
            classify = (lambda U, R=R: tags.get(concat(R, U)))
            try:
                plain = sigma32_tilde(f, S)
            except PreconditionViolated:
                continue  # reported by the phi2 sweep below
            t = classify(plain.output)
            if t is not None and t.kind == 2:
                mt.fail(MapTrace("sigma32_tilde", plain.subcase, T, concat(R, plain.output),
                                 "image meets the <2> part of phi1's image"))
            if plain.subcase.startswith("(3") and t is not None and t.kind == 1:
                mt.fail(MapTrace("sigma32_tilde", plain.subcase, T, concat(R, plain.output),
                                 "type (3) image meets the <1> part of phi1's image"))
        for T in dom_n3:
            R, _ = split_left(T, m3)
            mt.reduced("phi2", n3, top, [T], "tilde_top", m3,
                       lambda S, R=R: phi2_case1(f, S, lambda U: tags.get(concat(R, U))), 2)


def _case2(mt: _Matcher, mu: Composition) -> None:
    f = mt.f
    m1, m2, m3 = mu
    alpha, beta = mu, (m2, m1, m3)
    p = mt.key(alpha, (m1 - 1, m2 - 1, m3 + 2))
    n3 = mt.key(alpha, (m1, m2 - 1, m3 + 1))
    top = mt.key(alpha, mu)
    nb = mt.key(beta, (m1 - 1, m2, m3 + 1))
    img_nb = mt.sigma31_block(nb, top, 1)
    img_p = mt.sigma31_block(p, n3, 1)
    mt.codomain("tilde_top", [T for T in mt.members(top) if T not in img_nb])
    dom = [T for T in mt.members(n3) if T not in img_p]
    mt.rec.context = ReducedContext(m2 - m3 - 1, 0, CaseTag.II, m3)
    if dom:
        mt.reduced("phi", n3, top, dom, "tilde_top", m3, lambda S: phi_case2(f, S), 1,
                   fingerprints=(_fp_case2, FINGERPRINTS_CASE2))


def _case3(mt: _Matcher, mu: Composition) -> None:
    f = mt.f
    m1, m2, m3 = mu
    alpha, gamma = mu, (m1, m3, m2)
    p2 = mt.key(alpha, (m1 - 2, m2 + 1, m3 + 1))
    n2 = mt.key(alpha, (m1 - 1, m2 + 1, m3))
    top = mt.key(alpha, mu)
    ng = mt.key(gamma, (m1 - 1, m2, m3 + 1))
    img_p2 = mt.sigma31_block(p2, n2, 1)
    img_ng = mt.sigma31_block(ng, top, 1)
    mt.codomain("tilde_top", [T for T in mt.members(top) if T not in img_ng])
    dom = [T for T in mt.members(n2) if T not in img_p2]
    mt.rec.context = ReducedContext(2, m1 - m3 - 3, CaseTag.III, m3)
    if dom:
        mt.reduced("phi", n2, top, dom, "tilde_top", m3, lambda S: phi_case3(f, S), 1,
                   fingerprints=(_fp_case3, FINGERPRINTS_CASE3))


def _case4(mt: _Matcher, mu: Composition) -> None:
    f = mt.f
    m1, m2, m3 = mu
    rect = (m1 - 1, m2, m3 + 1)
    top = mt.key(mu, mu)
    sources = [mt.key((m2, m1, m3), rect), mt.key((m1, m3, m2), rect)]
    mt.codomain("T_top", mt.members(top))
    for which, src in enumerate(sources):
        if src is None or top is None:
            continue
        for T in mt.members(src):
            out = phi_case4(f, T)[which]
            mt.add(MapTrace(f"phi{which + 1}", "last column", T, out), src, top, "T_top")


def _bounce2(mt: _Matcher, mu: Composition) -> None:
    f = mt.f
    m1, m2, _ = mu
    top = mt.key(mu, mu)
    src = mt.key(mu, (m1 - 1, m2 + 1, 0))
    mt.codomain("T_top", mt.members(top))
    if src is None or top is None:
        return
    for T in mt.members(src):
        mt.add(MapTrace("sigma21", "", T, phi_bounce2(f, T)), src, top, "T_top")


def match_coefficient(f: HessenbergFunction, mu: Sequence[int]) -> MatchingRecord:
    """Run every injection for (f, mu) and audit the resulting cancellation."""
    b = bounce_data(f).bounce_number
    if b > 3:
        raise BounceTooLarge(f"bounce number {b} > 3")
    mu3 = pad3(mu)
    if sum(mu3) != f.n or not is_partition3(mu3):
        raise ValueError(f"{tuple(mu)} is not a partition of {f.n}")
    if b == 3:
        scope = f"case {case_diagram(mu3).case.value}"
    elif b == 2 and mu3[2] == 0:
        scope = "bounce 2"
    else:
        scope = "no maps needed"
    mt = _Matcher(f, mu3, scope)
    if b == 3:
        {CaseTag.I: _case1, CaseTag.II: _case2, CaseTag.III: _case3, CaseTag.IV: _case4}[mt.rec.case](mt, mu3)
    elif scope == "bounce 2":
        _bounce2(mt, mu3)
    return mt.finish()


def phi_case1(f: HessenbergFunction, mu: Sequence[int]) -> MatchingRecord:
    if case_diagram(mu).case != CaseTag.I:
        raise CaseMismatch(f"{tuple(mu)} is not a Case I partition")
    return match_coefficient(f, mu)
