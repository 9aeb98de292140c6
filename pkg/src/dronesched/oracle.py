"""Exact branch-and-bound solver for small instances.

Searches the 0/1 model directly: every delivery is either skipped or given to
one drone, each drone's load stays compatible and within budget, and no
delivery is used twice.  Used as ground truth for the approximation checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .mdsp import density_order
from .model import Assignment, Instance, Schedule, compatible, within_budget


@dataclass(frozen=True)
class OracleResult:
    schedule: Schedule
    opt_profit: float
    nodes_explored: int
    timed_out: bool


class _NodeLimit(Exception):
    pass


def solve_exact(inst: Instance, node_limit: int = 2_000_000, *, use_bound: bool = True,
                break_symmetry: bool = True) -> OracleResult:
    """Optimal schedule for ``inst.num_drones`` drones.

    Deliveries are branched in density order.  A node is pruned when its
    profit plus the fractional-knapsack bound of the remaining deliveries
    against the unused total capacity ``m * B`` cannot beat the incumbent.
    That bound ignores conflicts and drone boundaries, so it never undercuts
    the true optimum.  If ``node_limit`` is hit the incumbent comes back with
    ``timed_out=True`` and must not be trusted as optimal.
    """
    if node_limit <= 0:
        raise ValueError("node_limit must be positive")
    m, B = inst.num_drones, inst.budget
    order = [inst.delivery(j) for j in density_order(inst)]
    n = len(order)

    loads: list[list] = [[] for _ in range(m)]
    used = [0.0] * m
    best_profit = 0.0
    best: list[list[int]] = [[] for _ in range(m)]
    nodes = 0

    def bound(k: int, room: float) -> float:
        extra = 0.0
        for d in order[k:]:
            if room <= 0:
                break
            if d.cost <= room:
                extra += d.profit
                room -= d.cost
            else:
                extra += d.profit * room / d.cost
                break
        return extra

    def dfs(k: int, profit: float) -> None:
        nonlocal nodes, best_profit, best
        nodes += 1
        if nodes > node_limit:
            raise _NodeLimit
        if profit > best_profit:
            best_profit = profit
            best = [[d.id for d in load] for load in loads]
        if k == n:
            return
        if use_bound:
            room = m * B - math.fsum(used)
            # a subtree that can only tie the incumbent (up to round-off) is skipped
            if profit + bound(k, room) <= best_profit + 1e-9 * max(1.0, best_profit):
                return
        d = order[k]
        tried_empty = False
        for i in range(m):
            if not loads[i]:
                if break_symmetry and tried_empty:
                    continue
                tried_empty = True
            if not within_budget(used[i] + d.cost, B):
                continue
            if not all(compatible(d, e) for e in loads[i]):
                continue
            loads[i].append(d)
            prev = used[i]
            used[i] = math.fsum(e.cost for e in loads[i])
            dfs(k + 1, profit + d.profit)
            used[i] = prev
            loads[i].pop()
        dfs(k + 1, profit)

    timed_out = False
    try:
        dfs(0, 0.0)
    except _NodeLimit:
        timed_out = True
        nodes = node_limit
    schedule = Schedule.of(Assignment.of(ids, inst) for ids in best)
    return OracleResult(schedule, schedule.total_profit, nodes, timed_out)
