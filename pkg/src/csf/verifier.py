"""Exhaustive certification of h-positivity for small Hessenberg functions.

Each coefficient c_mu is computed three independent ways: the signed sum of
tableau counts, the e-expansion of the brute-force coloring polynomial, and
the number of positive tableaux left over by the injections.  Certificates
carry no timing so that repeated runs produce identical JSON.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from .coefficients import BounceTooLarge, case_of, coefficient_c, pad3
from .injections import MapTrace, match_coefficient
from .order import HessenbergFunction, bounce_data, enumerate_hessenberg
from .symfunc import (
    Partition,
    SymExpansion,
    brute_chromatic,
    chromatic_e_expansion,
    expansion_to_polynomial,
    partitions,
    s_to_h,
)
from .tableaux import gasharov_expansion

SCHEMA = "csf-cert/1"
DEFAULT_BUDGET = 8
HARD_LIMIT = 9


class BudgetExceeded(ValueError):
    pass


@dataclass
class MuRecord:
    mu: Partition
    case: str
    scope: str
    c_via_signed_sum: int
    c_via_oracle: int
    c_via_matching: int
    set_sizes: list[dict]
    checks: dict[str, bool]
    counterexamples: list[MapTrace]

    @property
    def ok(self) -> bool:
        values_agree = self.c_via_signed_sum == self.c_via_oracle == self.c_via_matching
        return values_agree and self.c_via_signed_sum >= 0 and all(self.checks.values()) and not self.counterexamples

    def to_json(self) -> dict:
        return {
            "mu": list(self.mu),
            "case": self.case,
            "scope": self.scope,
            "c_via_signed_sum": self.c_via_signed_sum,
            "c_via_oracle": self.c_via_oracle,
            "c_via_matching": self.c_via_matching,
            "set_sizes": self.set_sizes,
            "checks": self.checks,
            "counterexamples": [c.to_json() for c in self.counterexamples],
            "status": "PASS" if self.ok else "FAILED",
        }


@dataclass
class Certificate:
    f: HessenbergFunction
    scope: str
    oracle_agrees: bool
    records: list[MuRecord] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.f.n

    @property
    def bounce(self) -> int:
        return bounce_data(self.f).bounce_number

    @property
    def ok(self) -> bool:
        return self.oracle_agrees and all(r.ok for r in self.records)

    @property
    def coefficients(self) -> dict[Partition, int]:
        return {r.mu: r.c_via_signed_sum for r in self.records}

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "f": list(self.f.values),
            "n": self.n,
            "bounce": self.bounce,
            "scope": self.scope,
            "oracle_agrees": self.oracle_agrees,
            "status": "PASS" if self.ok else "FAILED",
            "records": [r.to_json() for r in self.records],
        }


def _oracle_e(f: HessenbergFunction) -> SymExpansion:
    return chromatic_e_expansion(f, with_t=False)


def verify_function(f: HessenbergFunction) -> Certificate:
    """Certify every c_mu for a function of bounce number at most three."""
    b = bounce_data(f).bounce_number
    if b > 3:
        raise BounceTooLarge(f"bounce number {b} > 3")
    oracle = _oracle_e(f)
    records = []
    for mu in partitions(f.n, max_len=3):
        signed = coefficient_c(f, mu)
        match = match_coefficient(f, mu)
        checks = dict(match.checks)
        records.append(
            MuRecord(
                mu=mu,
                case=case_of(pad3(mu)).value,
                scope=match.scope,
                c_via_signed_sum=signed,
                c_via_oracle=oracle[mu],  # type: ignore[arg-type]
                c_via_matching=match.residual_count,
                set_sizes=match.set_sizes(),
                checks=checks,
                counterexamples=list(match.counterexamples),
            )
        )
    # nothing may survive outside three parts
    support_ok = all(len(lam) <= 3 for lam in oracle.terms)
    return Certificate(f, f"bounce {b}", support_ok, records)


def oracle_only_certificate(f: HessenbergFunction) -> Certificate:
    """For bounce number above three: tableau route against coloring route, no positivity claim."""
    agree = s_to_h(gasharov_expansion(f)).terms == _oracle_e(f).as_basis("h").terms
    return Certificate(f, "oracle-only", agree, [])


def oracle_crosscheck(f: HessenbergFunction, full_polynomial: bool | None = None) -> bool:
    """Compare sum c_mu e_mu, Gasharov through Jacobi-Trudi, and the coloring polynomial.

    The coloring side is compared on all monomials when ``full_polynomial``
    (default: n <= 7) and otherwise on the weakly decreasing ones, which
    determine a symmetric polynomial.
    """
    n = f.n
    coeffs = {mu: coefficient_c(f, mu) for mu in partitions(n, max_len=3)}
    from_signed = SymExpansion("h", coeffs)
    from_gasharov = s_to_h(gasharov_expansion(f))
    if from_signed.terms != from_gasharov.terms:
        return False
    if full_polynomial is None:
        full_polynomial = n <= 7
    dominant = not full_polynomial
    lhs = expansion_to_polynomial(from_signed.as_basis("e"), n, dominant_only=dominant)
    rhs = brute_chromatic(f, n, with_t=False, dominant_only=dominant)
    return lhs.terms == rhs.terms


def certify(f: HessenbergFunction) -> Certificate:
    if bounce_data(f).bounce_number > 3:
        return oracle_only_certificate(f)
    return verify_function(f)


def budget_limit(allow_large: bool = False) -> int:
    env = os.environ.get("CSF_BUDGET")
    limit = int(env) if env else DEFAULT_BUDGET
    return max(limit, HARD_LIMIT) if allow_large else limit


@dataclass
class Summary:
    n_max: int
    bounce_filter: int | None
    certificates: list[Certificate]
    elapsed_seconds: float

    @property
    def functions(self) -> int:
        return len(self.certificates)

    @property
    def failures(self) -> list[Certificate]:
        return [c for c in self.certificates if not c.ok]

    def by_n(self) -> dict[int, tuple[int, int]]:
        out: dict[int, tuple[int, int]] = {}
        for c in self.certificates:
            total, bad = out.get(c.n, (0, 0))
            out[c.n] = (total + 1, bad + (0 if c.ok else 1))
        return out

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "n_max": self.n_max,
            "bounce_filter": self.bounce_filter,
            "functions": self.functions,
            "failures": len(self.failures),
            "failed": [str(c.f) for c in self.failures],
            "by_n": {str(n): {"functions": t, "failures": b} for n, (t, b) in sorted(self.by_n().items())},
        }

    def table(self) -> str:
        lines = [f"{'n':>3} {'functions':>10} {'failures':>9}"]
        for n, (t, b) in sorted(self.by_n().items()):
            lines.append(f"{n:>3} {t:>10} {b:>9}")
        lines.append(f"total {self.functions} functions, {len(self.failures)} failures, {self.elapsed_seconds:.1f}s")
        return "\n".join(lines)


def _functions(n_max: int, bounce_filter: int | None) -> Iterable[HessenbergFunction]:
    for n in range(1, n_max + 1):
        yield from enumerate_hessenberg(n, bounce_filter)


def verify_range(
    n_max: int,
    bounce_filter: int | None = None,
    allow_large: bool = False,
    workers: int = 1,
) -> Summary:
    """Certify every Hessenberg function with n <= n_max (optionally one bounce number only)."""
    if n_max < 1:
        raise ValueError("n_max must be positive")
    limit = budget_limit(allow_large)
    if n_max > limit:
        raise BudgetExceeded(f"n_max={n_max} exceeds the budget {limit}")
    start = time.perf_counter()
    fs = list(_functions(n_max, bounce_filter))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            certs = list(pool.map(certify, fs, chunksize=8))
    else:
        certs = [certify(f) for f in fs]
    return Summary(n_max, bounce_filter, certs, time.perf_counter() - start)
