"""Command line: ``csf list | expand | tableaux | verify | trace``.

Exit codes: 0 success, 1 verification failure, 2 usage error.  Human
readable output goes to stdout; ``--json`` switches to JSON and ``--out``
writes JSON to a file.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .coefficients import BounceTooLarge
from .injections import CaseMismatch, match_coefficient
from .order import HessenbergError, HessenbergFunction, bounce_data, dyck_word, enumerate_hessenberg, parse_hessenberg
from .symfunc import (
    SymExpansion,
    brute_chromatic,
    chromatic_e_expansion,
    h_to_s,
    is_partition,
    m_expansion_from_oracle,
    s_to_h,
)
from .tableaux import enumerate_tableaux, format_tableau, gasharov_expansion
from .verifier import BudgetExceeded, budget_limit, certify, verify_range

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    f: HessenbergFunction | None = None
    n: int | None = None
    bounce: int | None = None
    basis: str = "s"
    with_t: bool = False
    shape: tuple[int, ...] | None = None
    mu: tuple[int, ...] | None = None
    out: Path | None = None
    as_json: bool = False
    brief: bool = False
    allow_large: bool = False
    workers: int = 1


def parse_parts(text: str, what: str) -> tuple[int, ...]:
    pos = 0
    parts = []
    for tok in text.split(","):
        try:
            parts.append(int(tok))
        except ValueError:
            raise UsageError(f"{what}: cannot parse {tok.strip()!r} at position {pos + 1} of {text!r}") from None
        pos += len(tok) + 1
    if any(p <= 0 for p in parts) or not is_partition(parts):
        raise UsageError(f"{what}: {text!r} is not a partition")
    return tuple(parts)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="csf", description="Chromatic symmetric functions of unit interval graphs.")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--json", action="store_true", help="print JSON instead of text")
        sp.add_argument("--out", type=Path, help="also write JSON to this file")

    sp = sub.add_parser("list", help="enumerate Hessenberg functions")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--bounce", type=int)
    common(sp)

    sp = sub.add_parser("expand", help="expand X_G(f) in a basis")
    sp.add_argument("--f", required=True, help="comma-separated values, e.g. 2,3,4,4")
    sp.add_argument("--basis", choices=["e", "h", "s", "m"], default="s")
    sp.add_argument("--t", action="store_true", help="keep the ascent grading in t")
    common(sp)

    sp = sub.add_parser("tableaux", help="list the f-tableaux of one shape")
    sp.add_argument("--f", required=True)
    sp.add_argument("--shape", required=True, help="comma-separated partition")
    common(sp)

    sp = sub.add_parser("verify", help="certify h-positivity")
    target = sp.add_mutually_exclusive_group(required=True)
    target.add_argument("--n", type=int, help="every function with n <= N")
    target.add_argument("--f", help="a single function")
    sp.add_argument("--bounce", type=int)
    sp.add_argument("--allow-large", action="store_true", help="permit n = 9")
    sp.add_argument("--workers", type=int, default=1)
    common(sp)

    sp = sub.add_parser("trace", help="injection trace for one coefficient")
    sp.add_argument("--f", required=True)
    sp.add_argument("--mu", required=True)
    sp.add_argument("--brief", action="store_true", help="omit the individual pairings")
    sp.add_argument("--out", type=Path)
    return p


def build_config(argv: Sequence[str] | None = None) -> CliConfig:
    ns = _parser().parse_args(argv)
    f = None
    if getattr(ns, "f", None) is not None:
        try:
            f = parse_hessenberg(ns.f)
        except HessenbergError as exc:
            raise UsageError(f"--f: {exc}") from None
    n = getattr(ns, "n", None)
    if n is not None and n < 1:
        raise UsageError("--n must be at least 1")
    bounce = getattr(ns, "bounce", None)
    if bounce is not None and bounce < 1:
        raise UsageError("--bounce must be at least 1")
    shape = parse_parts(ns.shape, "--shape") if getattr(ns, "shape", None) else None
    mu = parse_parts(ns.mu, "--mu") if getattr(ns, "mu", None) else None
    workers = getattr(ns, "workers", 1)
    if workers < 1:
        raise UsageError("--workers must be at least 1")
    return CliConfig(
        subcommand=ns.subcommand,
        f=f,
        n=n,
        bounce=bounce,
        basis=getattr(ns, "basis", "s"),
        with_t=getattr(ns, "t", False),
        shape=shape,
        mu=mu,
        out=getattr(ns, "out", None),
        as_json=getattr(ns, "json", False),
        brief=getattr(ns, "brief", False),
        allow_large=getattr(ns, "allow_large", False),
        workers=workers,
    )


def _dump(data: object) -> str:
    return json.dumps(data, indent=2, sort_keys=False)


def _emit(cfg: CliConfig, text: str, data: object) -> None:
    if cfg.out is not None:
        cfg.out.write_text(_dump(data) + "\n")
    print(_dump(data) if cfg.as_json else text)


def expansion(f: HessenbergFunction, basis: str, with_t: bool = False) -> SymExpansion:
    """X_G(f) in e or m, omega X_G(f) in h or s (the bases where the coefficients are nonnegative)."""
    if basis == "m":
        return m_expansion_from_oracle(brute_chromatic(f, f.n, with_t=with_t, dominant_only=True))
    if with_t:
        e = chromatic_e_expansion(f, with_t=True)
        if basis == "e":
            return e
        return e.as_basis("h") if basis == "h" else h_to_s(e.as_basis("h"))
    s = gasharov_expansion(f)
    if basis == "s":
        return s
    h = s_to_h(s)
    return h if basis == "h" else h.as_basis("e")


def cmd_list(cfg: CliConfig) -> int:
    assert cfg.n is not None
    fs = enumerate_hessenberg(cfg.n, cfg.bounce)
    rows = [(str(f), bounce_data(f).bounce_number, dyck_word(f)) for f in fs]
    text = "\n".join([f"{'f':<{2 * cfg.n + 2}} bounce  dyck"] + [f"{a:<{2 * cfg.n + 2}} {b:>6}  {c}" for a, b, c in rows])
    text += f"\n{len(rows)} functions"
    data = {"n": cfg.n, "bounce": cfg.bounce, "functions": [{"f": list(f.values), "bounce": b, "dyck": d} for f, (_, b, d) in zip(fs, rows)]}
    _emit(cfg, text, data)
    return EXIT_OK


def cmd_expand(cfg: CliConfig) -> int:
    assert cfg.f is not None
    X = expansion(cfg.f, cfg.basis, cfg.with_t)
    data = {"f": list(cfg.f.values), "t": cfg.with_t, **X.to_json()}
    _emit(cfg, X.format(), data)
    return EXIT_OK


def cmd_tableaux(cfg: CliConfig) -> int:
    assert cfg.f is not None and cfg.shape is not None
    if sum(cfg.shape) != cfg.f.n:
        raise UsageError(f"--shape {cfg.shape} is not a partition of n={cfg.f.n}")
    ts = enumerate_tableaux(cfg.f, cfg.shape)
    text = "\n".join([format_tableau(T) for T in ts] + [f"{len(ts)} tableaux of shape {list(cfg.shape)}"])
    data = {"f": list(cfg.f.values), "shape": list(cfg.shape), "count": len(ts), "tableaux": [format_tableau(T) for T in ts]}
    _emit(cfg, text, data)
    return EXIT_OK


def _certificate_text(cert) -> str:
    lines = [f"f={cert.f}  bounce={cert.bounce}  scope={cert.scope}  {'PASS' if cert.ok else 'FAILED'}"]
    for r in cert.records:
        status = "ok" if r.ok else "FAILED"
        lines.append(
            f"  mu={list(r.mu)!s:<12} case {r.case:<4} c={r.c_via_signed_sum:<6} "
            f"oracle={r.c_via_oracle:<6} residual={r.c_via_matching:<6} {status}"
        )
    return "\n".join(lines)


def cmd_verify(cfg: CliConfig) -> int:
    if cfg.f is not None:
        cert = certify(cfg.f)
        data = cert.to_json()
        _emit(cfg, _certificate_text(cert), data)
        return EXIT_OK if cert.ok else EXIT_FAIL
    assert cfg.n is not None
    if cfg.n > budget_limit(cfg.allow_large):
        raise UsageError(f"--n {cfg.n} exceeds the budget {budget_limit(cfg.allow_large)} (CSF_BUDGET, --allow-large)")
    summary = verify_range(cfg.n, cfg.bounce, allow_large=cfg.allow_large, workers=cfg.workers)
    data = {"summary": summary.to_json(), "certificates": [c.to_json() for c in summary.certificates]}
    text = summary.table()
    for c in summary.failures:
        text += "\n" + _certificate_text(c)
    if cfg.out is not None:
        cfg.out.write_text(_dump(data) + "\n")
    print(_dump(summary.to_json()) if cfg.as_json else text)
    return EXIT_OK if not summary.failures else EXIT_FAIL


def cmd_trace(cfg: CliConfig) -> int:
    assert cfg.f is not None and cfg.mu is not None
    if sum(cfg.mu) != cfg.f.n:
        raise UsageError(f"--mu {list(cfg.mu)} is not a partition of n={cfg.f.n}")
    if len(cfg.mu) > 3:
        raise UsageError("--mu must have at most three parts")
    rec = match_coefficient(cfg.f, cfg.mu)
    data = rec.to_json()
    data["signed_sum"] = rec.signed_sum
    data["residual_count"] = rec.residual_count
    if cfg.brief:
        data.pop("pairings")
    if cfg.out is not None:
        cfg.out.write_text(_dump(data) + "\n")
    print(_dump(data))
    return EXIT_OK if rec.ok else EXIT_FAIL


COMMANDS = {
    "list": cmd_list,
    "expand": cmd_expand,
    "tableaux": cmd_tableaux,
    "verify": cmd_verify,
    "trace": cmd_trace,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = build_config(argv)
        return COMMANDS[cfg.subcommand](cfg)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    except (UsageError, BudgetExceeded, BounceTooLarge, CaseMismatch, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
