"""Density-greedy approximation for the multiple-drone problem.

The greedy opens ``m + Delta`` drone slots, feeds deliveries in decreasing
profit/cost density, and stops once ``m`` slots have overflowed the budget
("critical" slots).  Each critical slot is then cut back to either its last
delivery or everything before it, and the ``m`` most profitable slots win.
With ``Delta`` the conflict-graph maximum degree, the result is within
``m / (2 (m + Delta))`` of optimal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .model import (
    Assignment,
    Instance,
    PredecessorTable,
    Schedule,
    build_predecessor_table,
    compatible,
    within_budget,
)

SLOT_STRATEGIES = ("best-fit", "first-index")


class GreedyInvariantError(RuntimeError):
    """No open slot could take a delivery although fewer than m are critical."""


def density_order(inst: Instance) -> list[int]:
    """Delivery ids by decreasing profit/cost; ties go to higher profit, then lower id."""
    return sorted(
        (d.id for d in inst.deliveries),
        key=lambda j: (-Fraction(inst.delivery(j).profit) / Fraction(inst.delivery(j).cost),
                       -inst.delivery(j).profit, j),
    )


def moderate_critical(assignment: Assignment, last: int, inst: Instance) -> Assignment:
    """Make a critical assignment feasible: keep whichever of ``{last}`` and
    ``assignment - {last}`` earns more; a tie drops ``last``."""
    d = inst.delivery(last)
    if last not in assignment:
        raise GreedyInvariantError(f"delivery {last} is not in {assignment.delivery_ids}")
    if within_budget(assignment.total_cost, inst.budget) or \
            not within_budget(assignment.total_cost - d.cost, inst.budget):
        raise GreedyInvariantError(f"assignment {assignment.delivery_ids} is not critical")
    rest = [j for j in assignment.delivery_ids if j != last]
    if assignment.total_profit - d.profit >= d.profit:
        return Assignment.of(rest, inst)
    return Assignment.of([last], inst)


def select_top_m(slots: Sequence[Assignment], m: int) -> Schedule:
    ranked = sorted(range(len(slots)), key=lambda i: (-slots[i].total_profit, i))
    return Schedule.of(slots[i] for i in ranked[:m])


@dataclass
class _Slot:
    ids: list[int] = field(default_factory=list)
    cost: float = 0.0
    profit: float = 0.0
    last: int | None = None


@dataclass(frozen=True)
class CriticalRecord:
    slot: int
    last: int
    before: Assignment
    after: Assignment


@dataclass(frozen=True)
class MdspSolution:
    schedule: Schedule
    total_profit: float
    ratio_bound: float
    max_degree: int
    slots: tuple[Assignment, ...]
    critical: tuple[CriticalRecord, ...]
    assigned_order: tuple[int, ...]
    dropped: tuple[int, ...]
    comparisons: int
    slot_strategy: str


def _fits_slot(slot: _Slot, d, inst: Instance) -> tuple[bool, int]:
    """Scan the slot for a conflict with ``d``; returns (compatible, comparisons)."""
    n = 0
    for k in slot.ids:
        n += 1
        if not compatible(inst.delivery(k), d):
            return False, n
    return True, n


def solve_greedy_mdsp(inst: Instance, pt: PredecessorTable | None = None,
                      slot_strategy: str = "best-fit") -> MdspSolution:
    if slot_strategy not in SLOT_STRATEGIES:
        raise ValueError(f"unknown slot strategy {slot_strategy!r}; pick one of {SLOT_STRATEGIES}")
    if pt is None:
        pt = build_predecessor_table(inst)
    m, delta = inst.num_drones, pt.max_degree
    slots = [_Slot() for _ in range(m + delta)]
    open_slots = list(range(m + delta))
    critical: list[int] = []
    order = density_order(inst)
    assigned: list[int] = []
    comparisons = 0

    for j in order:
        if len(critical) == m:
            break
        d = inst.delivery(j)
        chosen = None
        for i in open_slots:
            ok, k = _fits_slot(slots[i], d, inst)
            comparisons += k
            if not ok:
                continue
            if slot_strategy == "first-index":
                chosen = i
                break
            if chosen is None or slots[i].cost > slots[chosen].cost:
                chosen = i
        if chosen is None:
            raise GreedyInvariantError(
                f"no open slot is compatible with delivery {j} "
                f"({len(open_slots)} open, max degree {delta})"
            )
        s = slots[chosen]
        s.ids.append(j)
        # summed the same way as Assignment so the critical test agrees with moderation
        s.cost = math.fsum(inst.delivery(k).cost for k in s.ids)
        s.profit += d.profit
        assigned.append(j)
        if not within_budget(s.cost, inst.budget):
            s.last = j
            open_slots.remove(chosen)
            critical.append(chosen)
    dropped = tuple(order[len(assigned):])

    final = [Assignment.of(s.ids, inst) for s in slots]
    records = []
    for i in critical:
        before = final[i]
        final[i] = moderate_critical(before, slots[i].last, inst)
        records.append(CriticalRecord(i, slots[i].last, before, final[i]))

    schedule = select_top_m(final, m)
    return MdspSolution(
        schedule=schedule,
        total_profit=schedule.total_profit,
        ratio_bound=greedy_floor(m, delta),
        max_degree=delta,
        slots=tuple(final),
        critical=tuple(records),
        assigned_order=tuple(assigned),
        dropped=dropped,
        comparisons=comparisons,
        slot_strategy=slot_strategy,
    )


def greedy_floor(m: int, max_degree: int) -> float:
    return m / (2 * (m + max_degree))
