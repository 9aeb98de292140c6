"""Empirical approximation-ratio benchmark against the exact oracle."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Sequence

from .generate import GenConfig, SplitMix64, generate_random
from .mdsp import solve_greedy_mdsp
from .model import Schedule, build_predecessor_table, check_schedule
from .oracle import solve_exact
from .sdsp import solve_fptas

RATIO_SLACK = 1e-9


@dataclass(frozen=True)
class BenchConfig:
    suite: str = "sdsp"
    trials: int = 50
    n: int = 12
    epsilons: tuple[float, ...] = (0.25,)
    drones: tuple[int, ...] = (1, 2, 3)
    seed: int = 0
    node_limit: int = 2_000_000
    slot_strategy: str = "best-fit"
    workers: int = 1

    def validate(self) -> list[str]:
        errs = []
        if self.suite not in ("sdsp", "mdsp"):
            errs.append(f"unknown suite {self.suite!r}")
        if self.trials < 1:
            errs.append("trials must be >= 1")
        if not 1 <= self.n <= 20:
            errs.append("n must lie in [1, 20] for the exact oracle")
        if self.suite == "sdsp" and not all(0 < e < 1 for e in self.epsilons):
            errs.append("every epsilon must lie in (0, 1)")
        if self.suite == "sdsp" and not self.epsilons:
            errs.append("need at least one epsilon")
        if self.suite == "mdsp" and (not self.drones or min(self.drones) < 1):
            errs.append("drone counts must be >= 1")
        if self.workers < 1:
            errs.append("workers must be >= 1")
        return errs


def trial_seeds(seed: int, trials: int) -> list[int]:
    rng = SplitMix64(seed)
    return [rng.next_u64() for _ in range(trials)]


def _ratio(profit: float, opt: float) -> float:
    return 1.0 if opt <= 0 else profit / opt


def _meets(profit: float, floor: float, opt: float) -> bool:
    return profit >= floor * opt - RATIO_SLACK * max(1.0, opt)


def _gen(seed: int, n: int, m: int) -> GenConfig:
    rng = SplitMix64(seed)
    return GenConfig(seed=seed, n=n, num_drones=m, overlap_density=rng.random(),
                     budget_factor=rng.uniform(0.2, 0.8))


def run_trial(cfg: BenchConfig, index: int, seed: int) -> list[dict[str, Any]]:
    rows = []
    if cfg.suite == "sdsp":
        inst = generate_random(_gen(seed, cfg.n, 1))
        pt = build_predecessor_table(inst)
        oracle = solve_exact(inst, cfg.node_limit)
        for eps in cfg.epsilons:
            sol = solve_fptas(inst, eps, pt)
            check_schedule(Schedule.of([sol.assignment]), inst)
            floor = 1.0 - eps
            rows.append(dict(trial=index, key=f"epsilon={eps}", max_degree=pt.max_degree,
                             profit=sol.profit, opt=oracle.opt_profit,
                             ratio=_ratio(sol.profit, oracle.opt_profit), floor=floor,
                             ok=_meets(sol.profit, floor, oracle.opt_profit),
                             timed_out=oracle.timed_out))
    else:
        for m in cfg.drones:
            inst = generate_random(_gen(seed, cfg.n, m))
            pt = build_predecessor_table(inst)
            sol = solve_greedy_mdsp(inst, pt, cfg.slot_strategy)
            check_schedule(sol.schedule, inst)
            oracle = solve_exact(inst, cfg.node_limit)
            rows.append(dict(trial=index, key=f"m={m}", max_degree=pt.max_degree,
                             profit=sol.total_profit, opt=oracle.opt_profit,
                             ratio=_ratio(sol.total_profit, oracle.opt_profit),
                             floor=sol.ratio_bound,
                             ok=_meets(sol.total_profit, sol.ratio_bound, oracle.opt_profit),
                             timed_out=oracle.timed_out))
    return rows


def _run_indexed(args):
    return run_trial(*args)


def run_bench(cfg: BenchConfig) -> dict[str, Any]:
    seeds = trial_seeds(cfg.seed, cfg.trials)
    jobs = [(cfg, i, s) for i, s in enumerate(seeds)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            per_trial = list(pool.map(_run_indexed, jobs))
    else:
        per_trial = [_run_indexed(j) for j in jobs]
    rows = [r for trial_rows in per_trial for r in trial_rows]
    return summarize(cfg, rows)


def summarize(cfg: BenchConfig, rows: Sequence[dict[str, Any]]) -> dict[str, Any]:
    groups: dict[str, list[dict[str, Any]]] = {}
    for r in rows:
        groups.setdefault(r["key"], []).append(r)
    summary = []
    for key, rs in groups.items():
        trusted = [r for r in rs if not r["timed_out"]]
        ratios = [r["ratio"] for r in trusted]
        summary.append({
            "key": key,
            "trials": len(rs),
            "timed_out": len(rs) - len(trusted),
            "min_ratio": min(ratios) if ratios else None,
            "mean_ratio": sum(ratios) / len(ratios) if ratios else None,
            "min_floor": min(r["floor"] for r in rs),
            "max_floor": max(r["floor"] for r in rs),
            "violations": sum(1 for r in trusted if not r["ok"]),
        })
    return {
        "suite": cfg.suite,
        "trials": cfg.trials,
        "n": cfg.n,
        "seed": cfg.seed,
        "groups": summary,
        "violations": sum(g["violations"] for g in summary),
        "timed_out": sum(g["timed_out"] for g in summary),
        "rows": list(rows),
    }
