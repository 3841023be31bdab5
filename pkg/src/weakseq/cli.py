"""Command-line entry point.

Results go to stdout as JSON (CSV for reproduce-tables); progress notes go
to stderr.  Exit codes: 0 success, 1 negative or incomplete result, 2 usage
error, 3 resource-cap error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

from . import __version__
from .certify import (
    KScope,
    load_certificates,
    make_certificate,
    reference_certificates,
    save_certificates,
    verify_theorem_coverage,
)
from .errors import (
    DegreeMismatchError,
    MonomialBoundError,
    ResourceLimitError,
    WeakseqError,
    ZeroCoefficientError,
)
from .extract import coefficient
from .montecarlo import TrialConfig, estimate_collision_mean, estimate_failure_probability
from .polysys import build_factor_system
from .reference import reference_rows, row_in_fast_tier
from .search import (
    SearchBudget,
    backtracking_search,
    construct_t3,
    exhaustive_check,
)
from .zn import Modulus, Ordering, SubsetSpec, classify_ordering, partial_sums, t_weak_violations

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _emit(payload: dict) -> None:
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _progress(message: str) -> None:
    print(message, file=sys.stderr)


def _parse_monomial(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise SystemExit(EXIT_USAGE)


def _parse_k_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition("..")
    try:
        return int(lo), int(hi if hi else lo)
    except ValueError:
        raise SystemExit(EXIT_USAGE)


def _default_threads() -> int:
    env = os.environ.get("WEAKSEQ_THREADS")
    if env is not None:
        return max(1, int(env))
    return os.cpu_count() or 1


def cmd_verify(args) -> int:
    ordering = Ordering.from_values(args.n, _parse_monomial(args.set))
    violations = t_weak_violations(ordering, args.t)
    _emit(
        {
            "n": args.n,
            "t": args.t,
            "ordering": list(ordering.sequence),
            "partial_sums": list(partial_sums(ordering)),
            "classification": classify_ordering(ordering).value,
            "violations": [list(v) for v in violations],
        }
    )
    return EXIT_OK if not violations else EXIT_NEGATIVE


def cmd_search(args) -> int:
    subset = SubsetSpec.parse(args.n, args.set)
    budget = SearchBudget(max_nodes=args.budget, time_limit_ms=args.time_limit_ms)
    result = backtracking_search(subset, args.t, budget)
    violations = None
    if result.ordering is not None:
        violations = [
            list(v)
            for v in t_weak_violations(Ordering(subset.modulus, result.ordering), args.t)
        ]
    _emit(
        {
            "status": result.status,
            "ordering": list(result.ordering) if result.ordering else None,
            "violations": violations,
            "nodes_visited": result.nodes_visited,
        }
    )
    return EXIT_OK if result.status == "found" else EXIT_NEGATIVE


def cmd_construct_t3(args) -> int:
    subset = SubsetSpec.parse(args.n, args.set)
    ordering = construct_t3(subset)
    violations = t_weak_violations(Ordering(subset.modulus, ordering), 3)
    _emit(
        {
            "status": "found",
            "ordering": list(ordering),
            "violations": [list(v) for v in violations],
            "nodes_visited": None,
        }
    )
    return EXIT_OK


def cmd_exhaust(args) -> int:
    k_lo, k_hi = _parse_k_range(args.k)
    report = exhaustive_check(
        Modulus(args.n),
        args.t,
        (k_lo, k_hi),
        budget=SearchBudget(max_nodes=args.budget),
        workers=args.threads,
    )
    _emit(report.to_json_dict())
    clean = not report.undecided and not report.counterexamples
    return EXIT_OK if clean else EXIT_NEGATIVE


def _build_system_from_args(args):
    return build_factor_system(args.family, k=args.k, t=args.t, ell=args.ell)


def cmd_build(args) -> int:
    system = _build_system_from_args(args)
    if args.dump:
        payload = [
            {"vars": [v for v, _ in f], "coeffs": [c for _, c in f]} for f in system.factors
        ]
        Path(args.dump).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    _emit(
        {
            "family": system.family,
            "params": dict(system.params),
            "num_vars": system.num_vars,
            "degree": system.degree,
            "num_factors": len(system.factors),
        }
    )
    return EXIT_OK


def cmd_coeff(args) -> int:
    system = _build_system_from_args(args)
    monomial = _parse_monomial(args.monomial)
    value = coefficient(system, monomial)
    _emit(
        {
            "family": system.family,
            "params": dict(system.params),
            "monomial": list(monomial),
            "degree": system.degree,
            "coefficient": str(value),
        }
    )
    return EXIT_OK


def _parse_k_scope(text: str) -> KScope:
    kind, _, value = text.partition(":")
    kind = {"exact": "exact", "at-least": "at_least", "at_least": "at_least"}.get(kind)
    if kind is None or not value.isdigit():
        raise SystemExit(EXIT_USAGE)
    return KScope(kind, int(value))


def cmd_certify(args) -> int:
    scope = _parse_k_scope(args.k_scope)
    monomial = _parse_monomial(args.monomial)
    try:
        cert = make_certificate(args.variant, args.t, args.ell, scope, monomial)
    except (ZeroCoefficientError, MonomialBoundError, DegreeMismatchError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return EXIT_NEGATIVE
    payload = cert.to_json_dict()
    if args.out:
        save_certificates(args.out, [cert])
        _progress(f"certificate written to {args.out}")
    _emit(payload)
    return EXIT_OK


def cmd_theorem(args) -> int:
    if args.certs:
        certs = load_certificates(args.certs)
    else:
        certs = reference_certificates(args.variant, args.t)
        _progress("using the shipped reference certificates")
    report = verify_theorem_coverage(args.variant, args.t, certs)
    _emit(report.to_json_dict())
    return EXIT_OK if report.verdict == "complete" else EXIT_NEGATIVE


def cmd_reproduce_tables(args) -> int:
    from .certify import certificate_from_reference, system_for

    rows = reference_rows(args.variant, args.t)
    writer = csv.writer(sys.stdout)
    writer.writerow(["k", "ell", "deg", "monomial", "coefficient"])
    mismatches = []
    certs = []
    for idx, row in enumerate(rows):
        scope = KScope(row.scope_kind, row.scope_value)
        k_cell = str(row.scope_value) if row.scope_kind == "exact" else f">={row.scope_value}"
        system = system_for(row.variant, row.t, row.ell, scope)
        if system.degree != row.degree:
            mismatches.append(f"row {idx}: deg computed {system.degree} != expected {row.degree}")
        compute_coefficient = args.tier == "full" or row_in_fast_tier(row)
        if compute_coefficient:
            _progress(f"computing row {idx + 1}/{len(rows)}: {scope}, ell={row.ell} ...")
            cert = make_certificate(row.variant, row.t, row.ell, scope, row.monomial)
            if cert.coefficient != row.coefficient:
                mismatches.append(
                    f"row {idx}: coefficient computed {cert.coefficient}"
                    f" != expected {row.coefficient}"
                )
            certs.append(cert)
            coeff_cell = str(cert.coefficient)
        else:
            coeff_cell = ""  # fast tier: degree-only for the widest systems
        writer.writerow(
            [k_cell, row.ell, system.degree, " ".join(map(str, row.monomial)), coeff_cell]
        )
    if args.out_dir:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / f"{args.variant}_t{args.t}_{args.tier}_certificates.json"
        save_certificates(str(path), certs)
        _progress(f"{len(certs)} certificates written to {path}")
    for line in mismatches:
        _progress(f"MISMATCH {line}")
    return EXIT_OK if not mismatches else EXIT_NEGATIVE


def cmd_montecarlo(args) -> int:
    if args.set:
        subset = SubsetSpec.parse(args.n, args.set)
        report = estimate_collision_mean(subset, args.t, args.trials, args.seed)
    else:
        if args.k is None:
            _progress("montecarlo needs --k (or --set for the collision-mean estimator)")
            return EXIT_USAGE
        cfg = TrialConfig(n=args.n, k=args.k, t=args.t, trials=args.trials, seed=args.seed)
        report = estimate_failure_probability(cfg)
    _emit(report.to_json_dict())
    return EXIT_OK if report.bound_satisfied else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weakseq",
        description="verify, construct and certify t-weak sequencings over Z_n",
    )
    parser.add_argument("--version", action="version", version=f"weakseq {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check an ordering for window-t collisions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", required=True, help="comma-separated ordering, e.g. 1,3,2")
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="backtracking search for a t-weak sequencing")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--budget", type=int, default=1_000_000, help="max nodes")
    p.add_argument("--time-limit-ms", type=int, default=None)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("construct-t3", help="direct 3-weak sequencing construction")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", required=True)
    p.set_defaults(func=cmd_construct_t3)

    p = sub.add_parser("exhaust", help="check every subset in a size range")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", required=True, help="size range a..b")
    p.add_argument("--budget", type=int, default=1_000_000)
    p.add_argument("--threads", type=int, default=_default_threads())
    p.set_defaults(func=cmd_exhaust)

    def add_family_args(p):
        p.add_argument("--family", required=True,
                       choices=["F", "P", "Pbar", "Q", "Qbar", "Htop", "Hbartop"])
        p.add_argument("--k", type=int, default=None)
        p.add_argument("--t", type=int, default=None)
        p.add_argument("--ell", type=int, default=None)

    p = sub.add_parser("build", help="build a factor system")
    add_family_args(p)
    p.add_argument("--dump", default=None, help="write the factor list to this JSON file")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("coeff", help="exact coefficient of a monomial")
    add_family_args(p)
    p.add_argument("--monomial", required=True, help="comma-separated exponents")
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("certify", help="build a nonzero-coefficient certificate")
    p.add_argument("--variant", required=True, choices=["main", "cmpp"])
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--k-scope", required=True, help="exact:K or at-least:K")
    p.add_argument("--monomial", required=True)
    p.add_argument("--out", default=None, help="also write the certificate to this file")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("theorem", help="verify coverage of a certificate set")
    p.add_argument("--variant", required=True, choices=["main", "cmpp"])
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--certs", default=None, help="certificate JSON (default: shipped table)")
    p.set_defaults(func=cmd_theorem)

    p = sub.add_parser("reproduce-tables", help="recompute the reference certificate tables")
    p.add_argument("--variant", required=True, choices=["main", "cmpp"])
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--tier", default="fast", choices=["fast", "full"])
    p.add_argument("--out-dir", default=None)
    p.set_defaults(func=cmd_reproduce_tables)

    p = sub.add_parser("montecarlo", help="seeded Monte Carlo bound estimates")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--set", default=None, help="estimate the collision mean of this set")
    p.set_defaults(func=cmd_montecarlo)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        _progress(f"resource limit: {exc} (cap={exc.cap}, used={exc.used})")
        return EXIT_RESOURCE
    except (ValueError, WeakseqError, OSError) as exc:
        _progress(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
