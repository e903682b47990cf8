"""Command-line entry point: ``skewlines <command> ...`` or ``python -m skewlines``.

Exit status is 0 on success, 1 when a verification check fails and 2 for
usage errors, non-prime input, resource-guard violations and I/O failures.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

from . import config
from .exact import p_local_elementary_divisors, smith_normal_form
from .geometry import ResourceGuardError, enumerate_subspaces
from .gfp import Prime
from .incidence import IncidenceSpec, build_incidence, skew_matrix
from .matrix_io import ordering_comment, write_matrix
from .report import CheckList
from .theorem import closed_forms, polynomial_identity_checks, verify_rank_structure, verify_theorem

__all__ = ["RunConfig", "build_parser", "run", "main", "EXIT_OK", "EXIT_FAILED", "EXIT_ERROR"]

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2

_ENGINE_ALIASES = {"bigint": "bigint", "plocal": "p_local", "p_local": "p_local", "both": "both"}


@dataclass(frozen=True)
class RunConfig:
    command: str
    p: int | None = None
    n: int = 4
    r: int | None = None
    s: int | None = None
    kind: str = "skew"
    engine: str | None = None
    out: str | None = None
    fmt: str = "mm"
    json_path: str | None = None
    bases: bool = False
    all_checks: bool = False
    override: bool = False
    threads: int | None = None

    def __post_init__(self):
        if self.p is not None:
            object.__setattr__(self, "p", int(Prime(self.p)))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="skewlines", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--allow-large",
        dest="override",
        action="store_true",
        help=f"lift the resource guard (same as {config.OVERRIDE_ENV}=1)",
    )
    common.add_argument("--threads", type=int, default=None, help="thread-count hint; never changes results")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="count (and list) the r-subspaces of F_p^n")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--bases", action="store_true", help="print each canonical basis")

    p = sub.add_parser("matrix", parents=[common], help="write an incidence matrix to a file")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--kind", choices=["skew", "psi"], default="skew")
    p.add_argument("--out", required=True)
    p.add_argument("--format", dest="fmt", choices=["mm", "csv"], default="mm")

    p = sub.add_parser("divisors", parents=[common], help="elementary divisors of the skew-lines matrix")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--engine", choices=sorted(_ENGINE_ALIASES), default="plocal")
    p.add_argument("--json", dest="json_path", help="write the profile as JSON ('-' for stdout)")

    p = sub.add_parser("verify", parents=[common], help="check every predicted invariant for one prime")
    p.add_argument("--p", type=int, required=True)
    p.add_argument(
        "--engine",
        choices=sorted(_ENGINE_ALIASES),
        default=None,
        help="divisor engine (default: both for p <= 3, plocal otherwise)",
    )
    p.add_argument("--all-checks", action="store_true", help="also run the polynomial identities")
    p.add_argument("--json", dest="json_path", help="write the report as JSON ('-' for stdout)")

    sub.add_parser("identities", parents=[common], help="integer checks of the multiplicity polynomials")
    return parser


def _config(ns: argparse.Namespace) -> RunConfig:
    fields = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__}
    if fields.get("engine"):
        fields["engine"] = _ENGINE_ALIASES[fields["engine"]]
    return RunConfig(**fields)


def _emit_json(path: str, payload: dict, out) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if path == "-":
        out.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _enumerate(cfg: RunConfig, out) -> int:
    family = enumerate_subspaces(cfg.p, cfg.n, cfg.r, override=cfg.override)
    out.write(f"{len(family)} subspaces of dimension {cfg.r} in F_{cfg.p}^{cfg.n}\n")
    if cfg.bases:
        for i, s in enumerate(family):
            rows = " ".join("".join(str(x) for x in row) for row in s.basis)
            out.write(f"{i}\t{rows}\n")
    return EXIT_OK


def _matrix(cfg: RunConfig, out) -> int:
    spec = IncidenceSpec(cfg.p, cfg.n, cfg.r, cfg.s, cfg.kind)
    m = build_incidence(spec, override=cfg.override)
    write_matrix(cfg.out, m, cfg.fmt, comment=ordering_comment(cfg.p, cfg.n, cfg.r, cfg.s, cfg.kind))
    out.write(f"wrote {m.shape[0]}x{m.shape[1]} {cfg.kind} matrix to {cfg.out}\n")
    return EXIT_OK


def _divisors(cfg: RunConfig, out) -> int:
    a = skew_matrix(cfg.p, override=cfg.override)
    profiles = {}
    if cfg.engine in ("bigint", "both"):
        profiles["bigint"] = smith_normal_form(a).profile(cfg.p)
    if cfg.engine in ("p_local", "both"):
        profiles["p_local"] = p_local_elementary_divisors(a, cfg.p)
    first = next(iter(profiles.values()))
    if any(prof != first for prof in profiles.values()):
        out.write("engines disagree:\n")
        for name, prof in profiles.items():
            out.write(f"  {name}: {prof.to_json()}\n")
        return EXIT_FAILED
    out.write(f"elementary divisors of the {a.shape[0]}x{a.shape[1]} skew-lines matrix, p={cfg.p}\n")
    for i, f in first.multiplicities.items():
        out.write(f"{cfg.p ** i:>12} : {f}\n")
    if cfg.json_path:
        _emit_json(cfg.json_path, first.as_dict(), out)
    return EXIT_OK


def _verify(cfg: RunConfig, out) -> int:
    engine = cfg.engine or ("both" if cfg.p <= 3 else "p_local")
    theorem = verify_theorem(cfg.p, engine, override=cfg.override)
    ranks = verify_rank_structure(cfg.p, override=cfg.override)
    sections = {"theorem": theorem.checks, "rank_structure": ranks.checks}
    timing = {f"theorem.{k}": v for k, v in theorem.timing.items()}
    timing.update({f"rank_structure.{k}": v for k, v in ranks.timing.items()})
    if cfg.all_checks:
        t = time.perf_counter()
        inv = CheckList()
        inv.add("closed-form invariants", [], closed_forms(cfg.p).invariant_violations())
        inv.extend(polynomial_identity_checks())
        sections["identities"] = inv
        timing["identities"] = time.perf_counter() - t

    passed = all(c.passed for c in sections.values())
    out.write(theorem.table() + "\n\n")
    out.write("rank structure mod p\n")
    for c in ranks.checks:
        out.write(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}: expected {c.expected}, computed {c.computed}\n")
    if "identities" in sections:
        out.write("\npolynomial identities\n")
        for c in sections["identities"]:
            out.write(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}\n")
    out.write(f"\nverdict: {'PASS' if passed else 'FAIL'}\n")

    if cfg.json_path:
        payload = {
            "p": cfg.p,
            "engine": engine,
            "passed": passed,
            "profile": theorem.profile.as_dict() if theorem.profile else None,
            "expected": closed_forms(cfg.p).e,
            "sections": {name: [c.as_dict() for c in checks] for name, checks in sections.items()},
            "timing": {k: round(v, 6) for k, v in timing.items()},
        }
        _emit_json(cfg.json_path, payload, out)
    return EXIT_OK if passed else EXIT_FAILED


def _identities(cfg: RunConfig, out) -> int:
    checks = polynomial_identity_checks()
    for c in checks:
        out.write(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}\n")
    return EXIT_OK if checks.passed else EXIT_FAILED


_COMMANDS = {
    "enumerate": _enumerate,
    "matrix": _matrix,
    "divisors": _divisors,
    "verify": _verify,
    "identities": _identities,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        cfg = _config(ns)
        return _COMMANDS[cfg.command](cfg, out)
    except (ValueError, ResourceGuardError, OSError) as exc:
        err.write(f"skewlines {ns.command}: error: {exc}\n")
        return EXIT_ERROR


def main(argv=None) -> int:
    return run(argv)
