"""Single-drone scheduling: exact profit-indexed DP and the profit-scaling FPTAS."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .model import (
    Assignment,
    Instance,
    PredecessorTable,
    budget_limit,
    build_predecessor_table,
)


class TableInconsistencyError(RuntimeError):
    """Backtracking could not reproduce a table entry.  Always a bug."""


@dataclass(frozen=True)
class DpTable:
    """``A[j, p]`` is the minimum cost of a compatible subset of deliveries
    ``1..j`` with profit exactly ``p``; entries ``>= sentinel`` mean infeasible."""

    A: np.ndarray
    sentinel: float
    profits: tuple[int, ...]
    cell_updates: int

    def is_inf(self, value: float) -> bool:
        return value >= self.sentinel


@dataclass(frozen=True)
class SdspSolution:
    assignment: Assignment
    profit: float
    optimal: bool
    epsilon: float = 0.0
    scale: float = 1.0
    cell_updates: int = 0


def _as_int_profits(profits: Sequence[float]) -> tuple[int, ...]:
    out = []
    for p in profits:
        if p < 0 or not float(p).is_integer():
            raise ValueError(
                f"exact DP needs nonnegative integer profits, got {p!r}; "
                "use solve_fptas for real-valued profits"
            )
        out.append(int(p))
    return tuple(out)


def fill_table(costs: Sequence[float], profits: Sequence[int], pred: Sequence[int]) -> DpTable:
    """Fill ``A`` over deliveries given in rendezvous order.

    ``pred[r - 1]`` is the last position whose window ends before window ``r``
    starts.  Row ``r`` is ``min(A[r-1, p], c_r + A[pred_r, p - p_r])``.
    """
    n = len(costs)
    P = max(profits, default=0)
    width = n * P + 1
    sentinel = math.fsum(costs) + 1.0
    A = np.full((n + 1, width), sentinel, dtype=np.float64)
    A[:, 0] = 0.0
    cells = 0
    for r in range(1, n + 1):
        row = A[r - 1].copy()
        pr = profits[r - 1]
        if pr < width:
            take = costs[r - 1] + A[pred[r - 1], : width - pr]
            np.minimum(row[pr:], take, out=row[pr:])
        np.minimum(row, sentinel, out=row)
        A[r] = row
        cells += width
    return DpTable(A, sentinel, tuple(profits), cells)


def build_table(inst: Instance, profits: Sequence[int], pt: PredecessorTable) -> DpTable:
    """``profits`` are indexed by delivery id - 1; the table rows follow
    ``pt.by_rendezvous``."""
    order = pt.by_rendezvous
    return fill_table([inst.delivery(j).cost for j in order],
                      [profits[j - 1] for j in order], pt.rendezvous_pred)


def backtrack(table: DpTable, inst: Instance, pt: PredecessorTable, target_profit: int) -> Assignment:
    """Recover a subset with profit ``target_profit`` and cost ``A[n, target]``.

    At ``(r, p)``: if ``A[r, p] == A[r-1, p]`` skip ``r`` (exclusion wins
    ties), otherwise take ``r`` and jump to ``(pred_r, p - p_r)``."""
    A = table.A
    r, p = inst.n, int(target_profit)
    picked = []
    while r > 0 and p > 0:
        here = A[r, p]
        if here == A[r - 1, p]:
            r -= 1
            continue
        pr = table.profits[r - 1]
        j = pt.by_rendezvous[r - 1]
        prev = pt.rendezvous_pred[r - 1]
        if pr > p or here != inst.delivery(j).cost + A[prev, p - pr]:
            raise TableInconsistencyError(f"cannot explain A[{r}, {p}] = {here}")
        picked.append(j)
        r, p = prev, p - pr
    if p != 0:
        raise TableInconsistencyError(f"walk ended with residual profit {p}")
    return Assignment.of(picked, inst)


def _best_profit(table: DpTable, budget: float) -> int:
    last = table.A[-1]
    feasible = np.flatnonzero((last < table.sentinel) & (last <= budget_limit(budget)))
    return int(feasible[-1])


def solve_dp_exact(inst: Instance, pt: PredecessorTable | None = None) -> SdspSolution:
    """Maximum-profit single-drone assignment; profits must be integers.

    Runs in O(n^2 P) time and memory for P the largest profit."""
    if pt is None:
        pt = build_predecessor_table(inst)
    profits = _as_int_profits([d.profit for d in inst.deliveries])
    table = build_table(inst, profits, pt)
    target = _best_profit(table, inst.budget)
    a = backtrack(table, inst, pt, target)
    return SdspSolution(a, a.total_profit, True, 0.0, 1.0, table.cell_updates)


def scaled_profits(profits: Sequence[float], epsilon: float) -> tuple[tuple[int, ...], float]:
    """Return ``(floor(p / K) for p), K`` with ``K = epsilon * max(p) / n``.

    Integer profits are left alone when ``K < 1``: they already give a table no
    wider than the scaled one, and the exact answer."""
    n = len(profits)
    P = max(profits)
    K = Fraction(epsilon) * Fraction(P) / n
    if K < 1 and all(float(p).is_integer() for p in profits):
        return tuple(int(p) for p in profits), 1.0
    # exact rational floor; float division can round p/K up past an integer
    return tuple(math.floor(Fraction(p) / K) for p in profits), float(K)


def solve_fptas(inst: Instance, epsilon: float, pt: PredecessorTable | None = None) -> SdspSolution:
    """(1 - epsilon)-approximate single-drone assignment in O(n^2 floor(n/epsilon))."""
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    if pt is None:
        pt = build_predecessor_table(inst)
    profits = [d.profit for d in inst.deliveries]
    if not profits or max(profits) == 0:
        return SdspSolution(Assignment.empty(), 0.0, False, epsilon)
    scaled, K = scaled_profits(profits, epsilon)
    table = build_table(inst, scaled, pt)
    target = _best_profit(table, inst.budget)
    a = backtrack(table, inst, pt, target)
    return SdspSolution(a, a.total_profit, False, epsilon, K, table.cell_updates)
