"""Command-line interface: verify, certify, search, and table subcommands.

Exit codes follow a fixed contract.  verify: 0 all slacks pass, 1 some
slack fails, 2 invalid input.  certify: 0 empty undecided set, 1 undecided
boxes remain, 2 bad arguments, 3 queue cap exceeded.  search: unconstrained
mode exits 0 iff a re-verified violation was found, open-problem mode
always exits 0 (2 on bad arguments).  table: 0, or 2 on bad density.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import bulk
from .certifier import CertificationTask, Target, certify, corner_argument_check, point_values
from .exceptions import BudgetExceededError, CevianError
from .inequalities import (
    bisector_ratio_slack,
    bisector_sqrt_chain_slack,
    key_system_residuals,
    lemma_scalene_slack,
    open_problem_slacks,
    ordering_products,
    slack_main,
    slack_quadratic,
    tolerance_scale,
)
from .kernel import (
    GeneralCevianParams,
    MixedWeights,
    SideTriple,
    altitudes,
    bisectors,
    general_cevians,
    medians,
    mixed_cevians,
    validate_sides,
)
from .reports import (
    TOOL_VERSION,
    RunManifest,
    canonical_json,
    report_document,
)
from .search import SearchConfig, SearchMode, search

ENV_SEED = "CEVIANS_SEED"
DEFAULT_SEED = 0


class _UsageError(Exception):
    """Bad arguments detected past argparse; mapped to exit code 2."""


def _parse_floats(text: str, n: int, what: str) -> tuple[float, ...]:
    parts = text.split(",")
    if len(parts) != n:
        raise _UsageError(f"{what} must be {n} comma-separated numbers, got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise _UsageError(f"cannot parse {what}: {exc}") from None


def _resolve_seed(flag_value: int | None) -> int:
    if flag_value is not None:
        return flag_value
    env = os.environ.get(ENV_SEED)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise _UsageError(f"{ENV_SEED} must be an integer, got {env!r}")
    return DEFAULT_SEED


def _emit(doc: dict, output: str | None) -> None:
    text = canonical_json(doc)
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cevians",
        description="Verify, rigorously certify, and search the "
                    "triangle-Cevian inequalities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="evaluate every applicable slack for one triangle")
    v.add_argument("--sides", help="three side lengths a,b,c in any order")
    v.add_argument("--normalized", help="normalized pair x,y (implies c = 1)")
    v.add_argument(
        "--cevians",
        required=True,
        choices=["median", "altitude", "bisector", "mixed", "general"],
        help="which Cevian family to evaluate",
    )
    v.add_argument("--weights", help="alpha,beta,gamma for --cevians mixed (default 1,1,1)")
    v.add_argument("--feet", help="ta,tb,tc in (0,1) for --cevians general")
    v.add_argument(
        "--tolerance",
        type=float,
        default=1e-12,
        help="slack tolerance, scaled by the c*lc normalizer (default 1e-12)",
    )
    v.add_argument("-o", "--output", help="write the JSON report to this path")

    c = sub.add_parser("certify", help="rigorous branch-and-bound certification")
    c.add_argument("--target", required=True, choices=[t.value for t in Target])
    c.add_argument("--mu", type=float, default=1e-6, help="degeneracy buffer (default 1e-6)")
    c.add_argument("--delta", type=float, default=1e-3,
                   help="equality-corner half-width (default 1e-3)")
    c.add_argument("--max-depth", type=int, default=60,
                   help="bisection depth before a box is left undecided (default 60)")
    c.add_argument("--min-box-width", type=float, default=1e-9,
                   help="width below which a box is left undecided (default 1e-9)")
    c.add_argument("--box-budget", type=int, default=2_000_000,
                   help="total processed-box budget before giving up refinement")
    c.add_argument("--queue-cap", type=int, default=20_000_000,
                   help="live queue size that aborts the run (exit 3)")
    c.add_argument("--include-proven", action="store_true",
                   help="write the full proven box list into the report")
    c.add_argument("-o", "--output")

    s = sub.add_parser("search", help="randomized counterexample search")
    s.add_argument("--mode", required=True,
                   choices=[m.value for m in SearchMode])
    s.add_argument("--samples", type=int, required=True)
    s.add_argument("--seed", type=int, default=None,
                   help=f"RNG seed (default: ${ENV_SEED} or {DEFAULT_SEED})")
    s.add_argument("--refine-steps", type=int, default=200,
                   help="local pattern-search sweeps per candidate (default 200)")
    s.add_argument("--record-top", type=int, default=20,
                   help="extremal candidates kept in the report (default 20)")
    s.add_argument("--workers", type=int, default=1,
                   help="shard worker threads; results are identical for any count")
    s.add_argument("-o", "--output")

    t = sub.add_parser("table", help="CSV grid of the normalized main slack")
    t.add_argument("--density", type=int, required=True,
                   help="grid points per axis (at least 2)")
    t.add_argument("-o", "--output", help="write CSV here (manifest goes to "
                                          "<output>.manifest.json)")
    return parser


def _build_triangle(args) -> tuple[SideTriple, dict]:
    if bool(args.sides) == bool(args.normalized):
        raise _UsageError("provide exactly one of --sides or --normalized")
    if args.sides:
        a, b, c = _parse_floats(args.sides, 3, "--sides")
        return validate_sides(a, b, c), {"sides": [a, b, c]}
    x, y = _parse_floats(args.normalized, 2, "--normalized")
    return validate_sides(x, y, 1.0), {"normalized": [x, y]}


def cmd_verify(args, started: float) -> int:
    t, input_echo = _build_triangle(args)

    weights = None
    feet = None
    if args.cevians == "mixed":
        wa, wb, wc = _parse_floats(args.weights or "1,1,1", 3, "--weights")
        try:
            weights = MixedWeights(wa, wb, wc)
        except ValueError as exc:
            raise _UsageError(str(exc)) from None
        cv = mixed_cevians(t, weights)
    elif args.cevians == "general":
        if not args.feet:
            raise _UsageError("--cevians general requires --feet ta,tb,tc")
        fa, fb, fc = _parse_floats(args.feet, 3, "--feet")
        feet = GeneralCevianParams(fa, fb, fc)
        cv = general_cevians(t, feet)
    elif args.cevians == "median":
        cv = medians(t)
    elif args.cevians == "altitude":
        cv = altitudes(t)
    else:
        cv = bisectors(t)

    slacks: dict[str, float] = {}
    checks: dict[str, bool] = {}
    if args.cevians == "general":
        s1, s2 = open_problem_slacks(t, cv)
        slacks[s1.name] = s1.value
        slacks[s2.name] = s2.value
        from .search import constraint_filter

        checks["open_problem_constraints"] = constraint_filter(t, cv)
    else:
        slacks["main"] = slack_main(t, cv).value
        slacks["quadratic"] = slack_quadratic(t, cv).value
    if args.cevians == "median":
        for rep in key_system_residuals(t, cv):
            slacks[rep.name] = rep.value
        prods = ordering_products(t, cv)
        slacks["middle_dominance"] = prods.product_b - max(
            prods.product_a, prods.product_c
        )
        checks["middle_dominant"] = prods.middle_dominant
        if t.a < t.b < t.c:
            slacks["scalene_lemma"] = lemma_scalene_slack(t, cv).value
    if args.cevians == "bisector":
        prods = ordering_products(t, cv)
        slacks["middle_dominance"] = prods.product_b - max(
            prods.product_a, prods.product_c
        )
        checks["middle_dominant"] = prods.middle_dominant
        slacks["bisector_ratio"] = bisector_ratio_slack(t).value
        slacks["bisector_sqrt_chain"] = bisector_sqrt_chain_slack(t).value

    scale = tolerance_scale(t, cv)
    threshold = -args.tolerance * scale
    all_ok = all(v >= threshold for v in slacks.values())

    config = {
        "cevians": args.cevians,
        "tolerance": args.tolerance,
        "weights": [weights.alpha, weights.beta, weights.gamma] if weights else None,
        "feet": list(feet.as_tuple()) if feet else None,
    }
    manifest = RunManifest(
        subcommand="verify",
        version=TOOL_VERSION,
        seed=None,
        config=config,
        inputs=input_echo,
        wall_time_s=time.perf_counter() - started,
    )
    body = {
        "triangle": {"a": t.a, "b": t.b, "c": t.c},
        "cevian_lengths": list(cv.as_tuple()),
        "slacks": slacks,
        "checks": checks,
        "scale": scale,
        "threshold": threshold,
        "all_nonnegative": all_ok,
    }
    _emit(report_document(manifest, body), args.output)
    return 0 if all_ok else 1


def _corner_sampling(target: Target, delta: float, grid: int = 128) -> dict:
    """Dense binary64 sampling of the corner interior [1-delta, 1]^2."""
    axis = np.linspace(1.0 - delta, 1.0, grid + 1)
    gx, gy = np.meshgrid(axis, axis, indexing="ij")
    mask = bulk.in_normalized_domain(gx, gy)
    values = point_values(target, gx[mask], gy[mask])
    tol = -1e-12
    return {
        "points": int(mask.sum()),
        "min_value": float(values.min()),
        "tolerance": tol,
        "pass": bool((values >= tol).all()),
    }


def cmd_certify(args, started: float) -> int:
    task = CertificationTask(
        target=Target.from_name(args.target),
        mu=args.mu,
        delta=args.delta,
        max_depth=args.max_depth,
        min_box_width=args.min_box_width,
        box_budget=args.box_budget,
        queue_cap=args.queue_cap,
    )
    exit_code = 0
    try:
        cert = certify(task)
        exit_code = 0 if cert.undecided_count == 0 else 1
    except BudgetExceededError as exc:
        cert = exc.partial_certificate
        exit_code = 3

    body = {"certificate": cert.to_report_dict(include_proven=args.include_proven)}
    if 0.0 < task.delta < 0.5:
        body["corner_check"] = corner_argument_check(task.delta).to_report_dict()
        body["corner_sampling"] = _corner_sampling(task.target, task.delta)

    manifest = RunManifest(
        subcommand="certify",
        version=TOOL_VERSION,
        seed=None,
        config={
            "target": task.target.value,
            "mu": task.mu,
            "delta": task.delta,
            "max_depth": task.max_depth,
            "min_box_width": task.min_box_width,
            "box_budget": task.box_budget,
            "queue_cap": task.queue_cap,
        },
        inputs={},
        wall_time_s=time.perf_counter() - started,
    )
    _emit(report_document(manifest, body), args.output)
    return exit_code


def cmd_search(args, started: float) -> int:
    seed = _resolve_seed(args.seed)
    try:
        cfg = SearchConfig(
            seed=seed,
            samples=args.samples,
            mode=SearchMode.from_name(args.mode),
            refine_steps=args.refine_steps,
            record_top=args.record_top,
            workers=args.workers,
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from None

    report = search(cfg)
    manifest = RunManifest(
        subcommand="search",
        version=TOOL_VERSION,
        seed=seed,
        config={
            "mode": cfg.mode.value,
            "samples": cfg.samples,
            "refine_steps": cfg.refine_steps,
            "record_top": cfg.record_top,
            "workers": cfg.workers,
            "foot_margin": cfg.foot_margin,
        },
        inputs={},
        wall_time_s=time.perf_counter() - started,
    )
    _emit(report_document(manifest, {"search": report.to_report_dict()}), args.output)
    if cfg.mode is SearchMode.UNCONSTRAINED:
        return 0 if report.violations else 1
    return 0


def cmd_table(args, started: float) -> int:
    if args.density < 2:
        raise _UsageError(f"--density must be at least 2, got {args.density}")
    axis = np.linspace(0.0, 1.0, args.density)
    lines = ["x,y,F"]
    for xv in axis:
        ys = axis[bulk.in_normalized_domain(np.full_like(axis, xv), axis)]
        if ys.size == 0:
            continue
        fs = bulk.normalized_slack_arrays(np.full_like(ys, xv), ys)
        for yv, fv in zip(ys, fs):
            lines.append(f"{float(xv)!r},{float(yv)!r},{float(fv)!r}")
    csv_text = "\n".join(lines) + "\n"

    manifest = RunManifest(
        subcommand="table",
        version=TOOL_VERSION,
        seed=None,
        config={"density": args.density},
        inputs={},
        wall_time_s=time.perf_counter() - started,
    )
    if args.output:
        Path(args.output).write_text(csv_text, encoding="utf-8")
        Path(args.output + ".manifest.json").write_text(
            canonical_json(manifest.to_dict()), encoding="utf-8"
        )
    else:
        sys.stdout.write(csv_text)
        sys.stderr.write(canonical_json(manifest.to_dict()))
    return 0


_HANDLERS = {
    "verify": cmd_verify,
    "certify": cmd_certify,
    "search": cmd_search,
    "table": cmd_table,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        return _HANDLERS[args.command](args, started)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CevianError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
