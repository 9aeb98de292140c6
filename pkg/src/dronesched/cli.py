"""``dronesched`` command line.

Exit codes: 0 success, 1 instance validation failed, 2 bad parameters,
3 oracle hit its node limit under ``--strict``, 4 an approximation ratio fell
below its proven floor.

Relative ``--input``/``--out`` paths resolve against ``$DRONESCHED_DATA_DIR``
when it is set.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from pathlib import Path
from typing import Sequence

from . import io
from .bench import BenchConfig, run_bench
from .generate import GenConfig, GeneratorConfigError, generate
from .mdsp import SLOT_STRATEGIES, solve_greedy_mdsp
from .model import (
    InstanceValidationError,
    Schedule,
    build_predecessor_table,
    check_schedule,
)
from .oracle import solve_exact
from .sdsp import solve_dp_exact, solve_fptas

EXIT_OK, EXIT_INVALID, EXIT_PARAM, EXIT_TIMEOUT, EXIT_RATIO = 0, 1, 2, 3, 4
DATA_DIR_ENV = "DRONESCHED_DATA_DIR"
DEFAULT_NODE_LIMIT = 2_000_000

log = logging.getLogger("dronesched")


class ParamError(Exception):
    pass


def _resolve(path: str) -> Path:
    p = Path(path)
    base = os.environ.get(DATA_DIR_ENV)
    if base and not p.is_absolute():
        return Path(base) / p
    return p


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dronesched", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve one instance file")
    s.add_argument("--input", required=True)
    s.add_argument("--algo", required=True, choices=("dp", "fptas", "greedy", "exact"))
    s.add_argument("--epsilon", type=float)
    s.add_argument("--drones", type=int, help="override the file's drone count")
    s.add_argument("--slot-strategy", choices=SLOT_STRATEGIES)
    s.add_argument("--node-limit", type=int)
    s.add_argument("--oracle", action="store_true", help="also run the exact solver and report the gap")
    s.add_argument("--strict", action="store_true", help="exit 3 if the exact solver times out")
    s.add_argument("--strict-format", action="store_true", help="reject unknown instance fields")
    s.add_argument("--timing", action="store_true", help="include wall-clock time in --json output")
    out = s.add_mutually_exclusive_group()
    out.add_argument("--json", dest="mode", action="store_const", const="json")
    out.add_argument("--table", dest="mode", action="store_const", const="table")

    g = sub.add_parser("generate", help="write a seeded instance file")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--n", type=int, default=10)
    g.add_argument("--mode", choices=("random", "geometric"), default="random")
    g.add_argument("--drones", type=int, default=1)
    g.add_argument("--profit-range", type=float, nargs=2, metavar=("LO", "HI"), default=(1, 50))
    g.add_argument("--cost-range", type=float, nargs=2, metavar=("LO", "HI"), default=(1, 20))
    g.add_argument("--real-values", action="store_true", help="draw real instead of integer costs/profits")
    g.add_argument("--budget-factor", type=float, default=0.5)
    g.add_argument("--overlap", type=float, default=0.3, help="overlap density in [0, 1] (random mode)")
    g.add_argument("--truck-speed", type=float, default=1.0)
    g.add_argument("--drone-speed", type=float, default=2.0)
    g.add_argument("--waypoints", type=int, default=3)
    g.add_argument("--energy-rate", type=float, default=1.0)
    g.add_argument("--profit-model", choices=("independent", "distance"), default="independent")
    g.add_argument("--out", help="output path (default: standard output)")

    b = sub.add_parser("bench", help="approximation ratios against the exact oracle")
    b.add_argument("--suite", required=True, choices=("sdsp", "mdsp"))
    b.add_argument("--trials", type=int, default=50)
    b.add_argument("--n", type=int, default=12)
    b.add_argument("--epsilon", type=_float_list, default=[0.25], help="comma-separated list")
    b.add_argument("--drones", type=_int_list, default=[1, 2, 3], help="comma-separated list")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--node-limit", type=int, default=DEFAULT_NODE_LIMIT)
    b.add_argument("--slot-strategy", choices=SLOT_STRATEGIES, default="best-fit")
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--strict", action="store_true", help="exit 3 if any oracle run times out")
    b.add_argument("--rows", action="store_true", help="include per-trial rows in --json output")
    bout = b.add_mutually_exclusive_group()
    bout.add_argument("--json", dest="mode", action="store_const", const="json")
    bout.add_argument("--table", dest="mode", action="store_const", const="table")
    return parser


def cmd_solve(args) -> int:
    algo = args.algo
    if args.epsilon is not None and algo != "fptas":
        raise ParamError("--epsilon only applies to --algo fptas")
    if algo == "fptas" and args.epsilon is None:
        raise ParamError("--algo fptas needs --epsilon")
    if algo == "fptas" and not 0 < args.epsilon < 1:
        raise ParamError("--epsilon must lie in (0, 1)")
    if args.slot_strategy is not None and algo != "greedy":
        raise ParamError("--slot-strategy only applies to --algo greedy")
    if args.node_limit is not None and algo != "exact" and not args.oracle:
        raise ParamError("--node-limit only applies to --algo exact or --oracle")
    if args.node_limit is not None and args.node_limit < 1:
        raise ParamError("--node-limit must be positive")
    if args.drones is not None and args.drones < 1:
        raise ParamError("--drones must be >= 1")
    if algo in ("dp", "fptas") and args.drones not in (None, 1):
        raise ParamError(f"--algo {algo} schedules a single drone")

    inst = io.read_instance(_resolve(args.input), strict=args.strict_format)
    for w in inst.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if algo in ("dp", "fptas"):
        inst = inst.with_drones(1)
    elif args.drones is not None:
        inst = inst.with_drones(args.drones)
    node_limit = args.node_limit or DEFAULT_NODE_LIMIT

    pt = build_predecessor_table(inst)
    params: dict = {}
    extra: dict = {"max_degree": pt.max_degree}
    timed_out = False
    start = time.perf_counter()
    if algo == "dp":
        if not inst.integer_profits:
            raise ParamError("--algo dp needs integer profits; use --algo fptas")
        sol = solve_dp_exact(inst, pt)
        schedule = Schedule.of([sol.assignment])
        extra["optimal"] = True
    elif algo == "fptas":
        params["epsilon"] = args.epsilon
        sol = solve_fptas(inst, args.epsilon, pt)
        schedule = Schedule.of([sol.assignment])
        extra["optimal"] = False
        extra["ratio_bound"] = 1.0 - args.epsilon
    elif algo == "greedy":
        params["slot_strategy"] = args.slot_strategy or "best-fit"
        sol = solve_greedy_mdsp(inst, pt, params["slot_strategy"])
        schedule = sol.schedule
        extra["optimal"] = False
        extra["ratio_bound"] = sol.ratio_bound
        extra["dropped"] = list(sol.dropped)
    else:
        params["node_limit"] = node_limit
        res = solve_exact(inst, node_limit)
        schedule = res.schedule
        timed_out = res.timed_out
        extra["optimal"] = not res.timed_out
        extra["nodes_explored"] = res.nodes_explored
        extra["timed_out"] = res.timed_out
    elapsed = time.perf_counter() - start

    # never print a schedule that does not check out against the file
    check_schedule(schedule, inst)

    if args.oracle:
        res = solve_exact(inst, node_limit)
        opt = res.opt_profit
        extra["oracle"] = {
            "opt_profit": opt,
            "ratio": 1.0 if opt <= 0 else schedule.total_profit / opt,
            "gap": opt - schedule.total_profit,
            "nodes_explored": res.nodes_explored,
            "timed_out": res.timed_out,
        }
        timed_out = timed_out or res.timed_out

    mode = args.mode or "json"
    if mode == "table" or args.timing:
        extra["elapsed_seconds"] = elapsed
    report = io.build_report(inst, schedule, algo, params, **extra)
    if mode == "json":
        io.write_json(report, sys.stdout)
    else:
        sys.stdout.write(io.format_table(report))
    if timed_out and args.strict:
        print("error: exact solver hit its node limit", file=sys.stderr)
        return EXIT_TIMEOUT
    return EXIT_OK


def cmd_generate(args) -> int:
    cfg = GenConfig(
        seed=args.seed, n=args.n, mode=args.mode, num_drones=args.drones,
        profit_range=tuple(args.profit_range), cost_range=tuple(args.cost_range),
        integer_values=not args.real_values, budget_factor=args.budget_factor,
        overlap_density=args.overlap, truck_speed=args.truck_speed,
        drone_speed=args.drone_speed, waypoint_count=args.waypoints,
        energy_rate=args.energy_rate, profit_model=args.profit_model,
    )
    try:
        inst = generate(cfg)
    except GeneratorConfigError as exc:
        raise ParamError(str(exc)) from None
    text = io.dump_instance(inst)
    if args.out:
        _resolve(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _bench_table(result: dict) -> str:
    lines = [f"suite {result['suite']}  trials {result['trials']}  n {result['n']}  seed {result['seed']}",
             f"{'group':<16}{'trials':>7}{'min ratio':>11}{'mean ratio':>12}{'floor':>16}"
             f"{'violations':>12}{'timeouts':>10}"]
    for g in result["groups"]:
        floor = f"{g['min_floor']:.4f}" if g["min_floor"] == g["max_floor"] \
            else f"{g['min_floor']:.3f}-{g['max_floor']:.3f}"
        mn = "-" if g["min_ratio"] is None else f"{g['min_ratio']:.4f}"
        mean = "-" if g["mean_ratio"] is None else f"{g['mean_ratio']:.4f}"
        lines.append(f"{g['key']:<16}{g['trials']:>7}{mn:>11}{mean:>12}{floor:>16}"
                     f"{g['violations']:>12}{g['timed_out']:>10}")
    return "\n".join(lines) + "\n"


def cmd_bench(args) -> int:
    cfg = BenchConfig(suite=args.suite, trials=args.trials, n=args.n,
                      epsilons=tuple(args.epsilon), drones=tuple(args.drones), seed=args.seed,
                      node_limit=args.node_limit, slot_strategy=args.slot_strategy,
                      workers=args.workers)
    errs = cfg.validate()
    if args.node_limit < 1:
        errs.append("--node-limit must be positive")
    if errs:
        raise ParamError("; ".join(errs))
    start = time.perf_counter()
    result = run_bench(cfg)
    elapsed = time.perf_counter() - start
    if (args.mode or "table") == "json":
        if not args.rows:
            result = {k: v for k, v in result.items() if k != "rows"}
        io.write_json(result, sys.stdout)
    else:
        sys.stdout.write(_bench_table(result))
        sys.stdout.write(f"elapsed {elapsed:.2f}s (wall clock, informational)\n")
    if result["violations"]:
        print(f"error: {result['violations']} ratio violation(s)", file=sys.stderr)
        return EXIT_RATIO
    if result["timed_out"] and args.strict:
        print(f"error: {result['timed_out']} oracle run(s) timed out", file=sys.stderr)
        return EXIT_TIMEOUT
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARAM if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    handler = {"solve": cmd_solve, "generate": cmd_generate, "bench": cmd_bench}[args.command]
    try:
        return handler(args)
    except ParamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except InstanceValidationError as exc:
        for e in exc.errors:
            print(f"invalid instance: {e}", file=sys.stderr)
        return EXIT_INVALID
    except io.InstanceFormatError as exc:
        print(f"invalid instance: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
