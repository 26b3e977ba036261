"""Command-line front end.

Subcommands wrap the metric computations and the experiment drivers; bases
come from JSON files, reports go out as JSON or CSV.  Exit codes: 0 success,
1 internal error, 2 validation/usage error, 3 a verification subcommand found
a violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import explorer, metrics, oracle
from .errors import ValidationError
from .measurement import (
    OrthonormalBasis,
    gram_schmidt_repair,
    haar_random_basis,
    make_basis,
)
from .tolerances import ASSERTION_TOL, FILE_INPUT_TOL, ORACLE_GAP, VALIDATION_TOL

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_VIOLATION = 3


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def _complex_pairs(vec) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(vec, dtype=complex)]


def load_basis(path: str) -> OrthonormalBasis:
    """Read a basis file: {"dim": d, "vectors": [[[re, im], ...], ...]}.

    Exactly orthonormal input is taken as is; input within the file tolerance
    is Gram-Schmidt repaired; anything worse is rejected naming the failing
    pair of indices.
    """
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    try:
        dim = int(data["dim"])
        raw = data["vectors"]
        vectors = np.array([[complex(re, im) for re, im in row] for row in raw])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"{path}: malformed basis file ({exc})") from exc
    if vectors.shape != (dim, dim):
        raise ValidationError(f"{path}: expected {dim}x{dim} vectors, got {vectors.shape}")
    try:
        return make_basis(vectors, tol=VALIDATION_TOL)
    except ValidationError:
        return gram_schmidt_repair(vectors, tol=FILE_INPUT_TOL)


def dump_basis(basis: OrthonormalBasis) -> dict:
    return {"dim": basis.dim, "vectors": [_complex_pairs(v) for v in basis.vectors]}


def emit_json(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    _write(text, out)


def emit_csv(table: explorer.ScanTable, out: str | None) -> None:
    # '.' decimal, 17 significant digits: exact double round-trip, no locale.
    lines = [",".join(table.column_names)]
    for row in table.rows:
        lines.append(",".join(f"{x:.17g}" for x in row))
    _write("\n".join(lines) + "\n", out)


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table_payload(table: explorer.ScanTable) -> dict:
    return {"column_names": table.column_names,
            "rows": [[float(x) for x in row] for row in table.rows]}


def _emit_table(table: explorer.ScanTable, args) -> None:
    if args.format == "csv":
        emit_csv(table, args.out)
    else:
        emit_json(_table_payload(table), args.out)


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_compute(args) -> int:
    a = load_basis(args.a)
    ap = load_basis(args.aprime)
    b = load_basis(args.b)
    report = metrics.tradeoff_report(a, ap, b)
    payload = {
        "epsilon": report.epsilon,
        "eta": report.eta,
        "delta": report.delta,
        "epsilon_cal": report.epsilon_cal,
        "eta_cal": report.eta_cal,
        "bound1": report.bound1,
        "bound2": report.bound2,
        "witness_error_index": report.witness_error_index,
        "witness_disturbance_index": report.witness_disturbance_index,
        "witness_sign": report.witness_sign,
        "witness_state": _complex_pairs(report.witness_state),
    }
    emit_json(payload, args.out)
    return EXIT_OK


def _cmd_scan_theorem1(args) -> int:
    table = explorer.scan_theorem1(args.b_angle, args.steps, plane_only=args.plane_only)
    _emit_table(table, args)
    return EXIT_OK


def _cmd_scan_bounds_d3(args) -> int:
    table = explorer.scan_bounds_d3(args.overlap1_sq, args.steps)
    _emit_table(table, args)
    return EXIT_OK


def _cmd_verify_properties(args) -> int:
    run = explorer.verify_properties(trials=args.trials, seed=args.seed,
                                     tol=args.tolerance)
    payload = {
        "checks": [{"name": n, "passed": ok, "detail": detail}
                   for n, ok, detail in run.checks],
        "all_passed": run.all_passed,
    }
    emit_json(payload, args.out)
    return EXIT_OK if run.all_passed else EXIT_VIOLATION


def _cmd_verify_theorem2(args) -> int:
    run = explorer.verify_theorem2(args.dim, args.trials, args.seed,
                                   tol=args.tolerance)
    payload = {
        "dim": run.dim,
        "trials": run.trials,
        "seed": run.seed,
        "floor": run.floor,
        "min_sum": run.min_sum,
        "sum_at_identity": run.sum_at_identity,
        "violations": run.violations,
    }
    emit_json(payload, args.out)
    return EXIT_OK if not run.violations else EXIT_VIOLATION


def _cmd_minimize_aprime(args) -> int:
    if args.a and args.b:
        a = load_basis(args.a)
        b = load_basis(args.b)
    else:
        a = haar_random_basis(args.dim, args.seed, 0)
        b = haar_random_basis(args.dim, args.seed, 1)
    result = explorer.minimize_over_intermediate(a, b, args.restarts, args.seed)
    payload = {
        "min_sum": result.min_sum,
        "min_delta": result.min_delta,
        "distance_to_a": result.distance_to_a,
        "distance_to_b": result.distance_to_b,
        "conjecture_floor": metrics.conjecture_floor(a, b),
        "best_basis": dump_basis(result.best_basis),
    }
    emit_json(payload, args.out)
    return EXIT_OK


def _cmd_conjecture(args) -> int:
    run = explorer.conjecture_search(args.dim, args.trials, args.seed,
                                     tol=args.tolerance)
    payload = {
        "dim": run.dim,
        "trials": run.trials,
        "seed": run.seed,
        "min_slack_sum": run.min_slack_sum,
        "min_slack_delta": run.min_slack_delta,
        "argmin_distance_to_a": run.argmin_distance_to_a,
        "argmin_distance_to_b": run.argmin_distance_to_b,
        "violations": run.violations,
    }
    emit_json(payload, args.out)
    return EXIT_OK if not run.violations else EXIT_VIOLATION


def _cmd_oracle_check(args) -> int:
    instances = []
    worst_low = worst_high = -np.inf
    for t in range(args.trials):
        a = haar_random_basis(args.dim, args.seed, t, 0)
        ap = haar_random_basis(args.dim, args.seed, t, 1)
        b = haar_random_basis(args.dim, args.seed, t, 2)
        pairs = {
            "epsilon": (metrics.error(a, ap).value,
                        oracle.max_error_over_states(a, ap, args.samples,
                                                     args.refine_iters, args.seed + t)),
            "eta": (metrics.disturbance(ap, b).value,
                    oracle.max_disturbance_over_states(ap, b, args.samples,
                                                       args.refine_iters, args.seed + t)),
            "delta": (metrics.overall_error(a, ap, b).value,
                      oracle.max_sum_over_states(a, ap, b, args.samples,
                                                 args.refine_iters, args.seed + t)),
        }
        row = {"trial": t}
        for name, (analytic, sampled) in pairs.items():
            gap = sampled.value - analytic
            row[name] = analytic
            row[name + "_oracle"] = sampled.value
            worst_low = max(worst_low, -gap)
            worst_high = max(worst_high, gap)
        instances.append(row)
    ok = worst_low <= ORACLE_GAP and worst_high <= args.tolerance
    payload = {
        "dim": args.dim,
        "trials": args.trials,
        "seed": args.seed,
        "max_oracle_shortfall": float(worst_low),
        "max_oracle_excess": float(worst_high),
        "passed": bool(ok),
        "instances": instances,
    }
    emit_json(payload, args.out)
    return EXIT_OK if ok else EXIT_VIOLATION


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qtradeoff",
        description="Error-disturbance trade-off for consecutive projective measurements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, dim_default=3):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                       help="worker hint; results do not depend on it")
        p.add_argument("--out", type=str, default=None)
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--tolerance", type=float, default=ASSERTION_TOL,
                       help="assertion tolerance for verification subcommands")
        return p

    p = common(sub.add_parser("compute", help="trade-off report for one (A, A', B) triple"))
    p.add_argument("--a", required=True)
    p.add_argument("--aprime", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(handler=_cmd_compute)

    p = common(sub.add_parser("scan-theorem1", help="d=2 sweep of the intermediate basis"))
    p.add_argument("--b-angle", type=float, required=True, dest="b_angle")
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--plane-only", action=argparse.BooleanOptionalAction,
                   default=True, dest="plane_only")
    p.set_defaults(handler=_cmd_scan_theorem1)

    p = common(sub.add_parser("scan-bounds-d3", help="d=3 disturbance bound sweep"))
    p.add_argument("--overlap1-sq", type=float, default=0.1, dest="overlap1_sq")
    p.add_argument("--steps", type=int, default=200)
    p.set_defaults(handler=_cmd_scan_bounds_d3)

    p = common(sub.add_parser("verify-properties",
                              help="randomized checks of the basic properties"))
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(handler=_cmd_verify_properties)

    p = common(sub.add_parser("verify-theorem2", help="MUB trade-off verification"))
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--trials", type=int, default=1000)
    p.set_defaults(handler=_cmd_verify_theorem2)

    p = common(sub.add_parser("minimize-aprime",
                              help="search for the intermediate basis minimizing eps + eta"))
    p.add_argument("--a", default=None)
    p.add_argument("--b", default=None)
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--restarts", type=int, default=6)
    p.set_defaults(handler=_cmd_minimize_aprime)

    p = common(sub.add_parser("conjecture", help="randomized conjecture stress test"))
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--trials", type=int, default=1000)
    p.set_defaults(handler=_cmd_conjecture)

    p = common(sub.add_parser("oracle-check",
                              help="cross-validate metrics against pure-state sampling"))
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--refine-iters", type=int, default=200, dest="refine_iters")
    p.set_defaults(handler=_cmd_oracle_check)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.handler(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # internal failure, keep the exit-code contract
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())
