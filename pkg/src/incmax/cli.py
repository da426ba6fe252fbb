"""Batch driver: generate or load instances, run algorithms and checkers,
emit machine-readable reports.

Exit codes: 0 success, 1 bound violated or expectation mismatch, 2 input
error, 3 enumeration budget exceeded. The default enumeration budget can be
set through the INCMAX_ENUM_BUDGET environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Tuple

from . import adversarial, instance_io
from .algorithms import (
    PHASE_BOUND,
    greedy,
    greedy_bound,
    phase_algorithm,
)
from .core import (
    DEFAULT_ENUMERATION_BUDGET,
    AccountabilityError,
    CompetitivenessReport,
    IncrementalInstance,
    ResourceError,
    check_accountable,
    check_alpha_augmentable,
    check_monotone,
    check_subadditive,
    check_submodular,
    competitive_ratio,
    evaluate,
    optimum_table,
)
from .numeric import csv_number, encode_value, parse_value
from .objectives import region_optimum, region_optimum_table

ENV_BUDGET = "INCMAX_ENUM_BUDGET"


def _parse_param(raw: str):
    try:
        return int(raw)
    except ValueError:
        pass
    if "/" in raw:
        p, q = raw.split("/", 1)
        return Fraction(int(p), int(q))
    return float(raw)


def _parse_generator(spec: str) -> Tuple[str, object]:
    """Parse a generator spec like ``region:N=8,beta=0.86`` into (kind, data)."""
    name, _, raw_params = spec.partition(":")
    params = {}
    if raw_params:
        for chunk in raw_params.split(","):
            key, _, val = chunk.partition("=")
            if not val:
                raise ValueError(f"malformed generator parameter {chunk!r}")
            params[key] = _parse_param(val)
    if name == "region":
        data, _ = adversarial.gen_region_choosing(int(params["N"]), float(params["beta"]))
        return "region_choosing", data
    if name == "gk":
        return "bridge_flow", adversarial.gen_bridge_flow_family(int(params["k"]))
    if name == "knapsack_trap":
        return "knapsack", adversarial.gen_knapsack_trap(int(params["k"]), params.get("eps"))
    if name == "iset_trap":
        return "set_packing", adversarial.gen_independent_set_trap(
            int(params["k"]), params.get("eps")
        )
    if name == "paths_trap":
        return "disjoint_paths", adversarial.gen_disjoint_paths_trap(
            int(params["k"]), params.get("eps")
        )
    for fixture in adversarial.gen_witnesses():
        if fixture.name == name:
            return fixture.kind, fixture.data
    raise ValueError(f"unknown generator {name!r}")


def _load_target(args) -> Tuple[str, object, IncrementalInstance]:
    if args.gen:
        kind, data = _parse_generator(args.gen)
    else:
        kind, data = instance_io.load_instance(args.file)
    return kind, data, instance_io.build_instance(kind, data)


def _write_output(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# run
# ---------------------------------------------------------------------------


def _report_payload(report: CompetitivenessReport, bound: Optional[float]) -> dict:
    satisfied = None
    if bound is not None:
        satisfied = bool(report.worst_ratio <= bound + 1e-9)
    return {
        "rows": [
            {
                "k": k,
                "alg_value": encode_value(report.alg_values[k - 1]),
                "opt_value": encode_value(report.opt_values[k - 1]),
                "ratio": encode_value(report.ratios[k - 1]),
            }
            for k in range(1, report.k_max + 1)
        ],
        "worst_ratio": encode_value(report.worst_ratio),
        "argmax_k": report.argmax_k,
        "bound": bound,
        "bound_satisfied": satisfied,
    }


def _report_csv(report: CompetitivenessReport, bound: Optional[float]) -> list:
    lines = ["k,alg_value,opt_value,ratio"]
    for k in range(1, report.k_max + 1):
        lines.append(
            f"{k},{csv_number(report.alg_values[k - 1])},"
            f"{csv_number(report.opt_values[k - 1])},{csv_number(report.ratios[k - 1])}"
        )
    satisfied = "" if bound is None else str(bool(report.worst_ratio <= bound + 1e-9)).lower()
    bound_txt = "" if bound is None else csv_number(bound)
    lines.append(f"summary,{csv_number(report.worst_ratio)},{bound_txt},{satisfied}")
    return lines


def cmd_run(args) -> int:
    kind, data, inst = _load_target(args)
    k_max = args.kmax
    if not 1 <= k_max <= inst.n:
        raise ValueError(f"--kmax must lie in 1..{inst.n}, got {k_max}")
    if kind == "region_choosing":
        # closed-form optima; enumeration is checked against them in tests
        table = region_optimum_table(data, k_max)
        oracle = lambda k: region_optimum(data, k)
    else:
        table = optimum_table(inst, k_max, budget=args.budget)
        oracle = None
    algs = ["phase", "greedy"] if args.alg == "both" else [args.alg]
    reports = {}
    bounds = {}
    for alg in algs:
        if alg == "phase":
            order, _ = phase_algorithm(inst, k_max, oracle=oracle, budget=args.budget)
            bounds[alg] = PHASE_BOUND
        else:
            order, _ = greedy(inst, k_max)
            bounds[alg] = greedy_bound(args.alpha) if args.alpha is not None else None
        reports[alg] = competitive_ratio(inst, order, table)

    if args.format == "json":
        payload = {
            "instance": inst.label,
            "k_max": k_max,
            "algorithms": {
                alg: _report_payload(reports[alg], bounds[alg]) for alg in algs
            },
        }
        _write_output(args, json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        lines = []
        for alg in algs:
            if len(algs) > 1:
                lines.append(f"# algorithm: {alg}")
            lines.extend(_report_csv(reports[alg], bounds[alg]))
        _write_output(args, "\n".join(lines) + "\n")

    violated = any(
        bounds[alg] is not None and reports[alg].worst_ratio > bounds[alg] + 1e-9
        for alg in algs
    )
    return 1 if violated else 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


_SIMPLE_CHECKS = {
    "monotone": check_monotone,
    "subadditive": check_subadditive,
    "accountable": check_accountable,
    "submodular": check_submodular,
}


def _run_check(inst: IncrementalInstance, token: str, seed: int):
    if token in _SIMPLE_CHECKS:
        return _SIMPLE_CHECKS[token](inst, seed=seed)
    if token.startswith("augmentable:"):
        alpha = _parse_param(token.split(":", 1)[1])
        return check_alpha_augmentable(inst, alpha, seed=seed)
    raise ValueError(f"unknown check {token!r}")


def _witness_text(witness) -> str:
    if witness is None:
        return "-"
    return "/".join("{" + " ".join(str(e) for e in sorted(part)) + "}" for part in witness)


def cmd_verify(args) -> int:
    _, _, inst = _load_target(args)
    tokens = [t.strip() for t in args.checks.split(",") if t.strip()]
    if not tokens:
        raise ValueError("no checks requested")
    reports = [_run_check(inst, token, args.seed) for token in tokens]

    expected = None
    if args.expect:
        with open(args.expect, "r", encoding="utf-8") as fh:
            expected = json.load(fh)

    def normalize(v) -> bool:
        if isinstance(v, bool):
            return v
        if v in ("holds", "fails"):
            return v == "holds"
        raise ValueError(f"expectation values must be booleans or holds/fails, got {v!r}")

    matched = None
    if expected is not None:
        matched = all(
            r.holds == normalize(expected[r.name]) for r in reports if r.name in expected
        )

    if args.format == "json":
        payload = {
            "instance": inst.label,
            "checks": [
                {
                    "property": r.name,
                    "verdict": "holds" if r.holds else "fails",
                    "witness": (
                        None if r.witness is None else [sorted(p) for p in r.witness]
                    ),
                    "pairs_checked": r.pairs_checked,
                    "mode": r.mode,
                }
                for r in reports
            ],
            "expected_matched": matched,
        }
        _write_output(args, json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        lines = ["property,verdict,witness,pairs_checked"]
        for r in reports:
            verdict = "holds" if r.holds else "fails"
            lines.append(f"{r.name},{verdict},{_witness_text(r.witness)},{r.pairs_checked}")
        _write_output(args, "\n".join(lines) + "\n")
    return 1 if matched is False else 0


# ---------------------------------------------------------------------------
# lowerbound
# ---------------------------------------------------------------------------


def cmd_lowerbound(args) -> int:
    if args.mode == "problematic-pair":
        if args.rho is None or args.beta is None:
            raise ValueError("problematic-pair mode needs --rho and --beta")
        cert = adversarial.certify_problematic(
            args.rho, args.beta, grid_points=args.grid_points
        )
        payload = {
            "mode": "problematic-pair",
            "rho": cert.rho,
            "beta": cert.beta,
            "eps": cert.eps,
            "grid_points": cert.grid_points,
            "max_margin": cert.max_margin,
            "worst_x": cert.worst_x,
            "certified": cert.certified,
        }
        if args.format == "json":
            _write_output(args, json.dumps(payload, sort_keys=True, indent=2) + "\n")
        else:
            lines = ["field,value"] + [f"{k},{payload[k]}" for k in sorted(payload)]
            _write_output(args, "\n".join(lines) + "\n")
        return 0 if cert.certified else 1

    if args.mode == "region-search":
        if args.beta is None:
            raise ValueError("region-search mode needs --beta")
        rows = []
        for n in range(args.nmin, args.nmax + 1, args.nstep):
            seq, ratio = adversarial.best_region_schedule(n, args.beta)
            rows.append({"N": n, "worst_ratio": ratio, "schedule": list(seq.ks)})
        if args.format == "json":
            payload = {"mode": "region-search", "beta": args.beta, "rows": rows}
            _write_output(args, json.dumps(payload, sort_keys=True, indent=2) + "\n")
        else:
            lines = ["N,worst_ratio,schedule"]
            for row in rows:
                sched = " ".join(str(k) for k in row["schedule"])
                lines.append(f"{row['N']},{csv_number(row['worst_ratio'])},{sched}")
            _write_output(args, "\n".join(lines) + "\n")
        return 0

    if args.mode == "gk-table":
        rows = []
        all_match = True
        for k in range(args.kmin, args.kmax + 1):
            inst = instance_io.build_instance(
                "bridge_flow", adversarial.gen_bridge_flow_family(k)
            )
            order, _ = greedy(inst, 2 * k)
            greedy_value = evaluate(inst, order.prefix_mask(2 * k))
            witness_value = evaluate(inst, adversarial.bridge_flow_family_optimum_witness(k))
            full_value = evaluate(inst, (1 << inst.n) - 1)
            # the witness meets the monotone upper bound f(everything),
            # which pins the optimum at cardinality 2k without enumeration
            optimum = full_value if witness_value == full_value else None
            ratio = None if optimum is None else Fraction(optimum) / greedy_value
            closed = adversarial.bridge_flow_family_ratio(k)
            match = ratio == closed
            all_match = all_match and match
            rows.append(
                {
                    "k": k,
                    "ratio": encode_value(ratio) if ratio is not None else None,
                    "closed_form": encode_value(closed),
                    "match": match,
                }
            )
        limit = greedy_bound(2)
        if args.format == "json":
            payload = {"mode": "gk-table", "limit": limit, "rows": rows}
            _write_output(args, json.dumps(payload, sort_keys=True, indent=2) + "\n")
        else:
            lines = ["k,ratio,closed_form,match"]
            for row in rows:
                ratio_txt = (
                    csv_number(parse_value(row["ratio"])) if row["ratio"] is not None else ""
                )
                closed_txt = csv_number(parse_value(row["closed_form"]))
                lines.append(
                    f"{row['k']},{ratio_txt},{closed_txt},{str(row['match']).lower()}"
                )
            lines.append(f"limit,{csv_number(limit)},,")
            _write_output(args, "\n".join(lines) + "\n")
        return 0 if all_match else 1

    raise ValueError(f"unknown lowerbound mode {args.mode!r}")


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="incmax",
        description="Incremental maximization: algorithms, checkers, lower bounds.",
    )
    default_budget = int(os.environ.get(ENV_BUDGET, DEFAULT_ENUMERATION_BUDGET))
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_instance=True):
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--seed", type=int, default=0, help="seed for sampled checkers")
        p.add_argument(
            "--budget",
            type=int,
            default=default_budget,
            help="enumeration budget in subsets",
        )
        if with_instance:
            src = p.add_mutually_exclusive_group(required=True)
            src.add_argument(
                "--gen",
                help=(
                    "generator spec, e.g. region:N=8,beta=0.86 | gk:k=2 | "
                    "knapsack_trap:k=4 | iset_trap:k=3 | paths_trap:k=3 | "
                    "flow_trap | path_matching | bridge_flow_witness"
                ),
            )
            src.add_argument("--file", help="instance JSON file")

    p_run = sub.add_parser("run", help="run algorithms and report per-k ratios")
    add_common(p_run)
    p_run.add_argument("--alg", choices=("phase", "greedy", "both"), required=True)
    p_run.add_argument("--kmax", type=int, required=True)
    p_run.add_argument(
        "--alpha",
        type=float,
        default=None,
        help="augmentability factor for the greedy bound column",
    )
    p_run.set_defaults(func=cmd_run)

    p_verify = sub.add_parser("verify", help="run property checkers")
    add_common(p_verify)
    p_verify.add_argument(
        "--checks",
        default="monotone,subadditive,accountable",
        help="comma list: monotone,subadditive,accountable,submodular,augmentable:ALPHA",
    )
    p_verify.add_argument("--expect", help="JSON file of expected verdicts")
    p_verify.set_defaults(func=cmd_verify)

    p_lb = sub.add_parser("lowerbound", help="lower-bound machinery")
    add_common(p_lb, with_instance=False)
    p_lb.add_argument(
        "--mode", choices=("problematic-pair", "region-search", "gk-table"), required=True
    )
    p_lb.add_argument("--rho", type=float)
    p_lb.add_argument("--beta", type=float)
    p_lb.add_argument("--grid-points", type=int, default=100_000)
    p_lb.add_argument("--nmin", type=int, default=5)
    p_lb.add_argument("--nmax", type=int, default=20)
    p_lb.add_argument("--nstep", type=int, default=5)
    p_lb.add_argument("--kmin", type=int, default=2)
    p_lb.add_argument("--kmax", type=int, default=4)
    p_lb.set_defaults(func=cmd_lowerbound)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags, which matches the input-error code
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, AccountabilityError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
