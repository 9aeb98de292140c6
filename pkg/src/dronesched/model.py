"""Problem data for drone delivery scheduling.

A delivery occupies the closed time window ``[t_launch, t_rendezvous]`` on the
truck timeline.  Two deliveries can share a drone only if their windows are
disjoint; touching endpoints count as a conflict.
"""

from __future__ import annotations

import bisect
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

logger = logging.getLogger(__name__)

# Relative slack for budget comparisons on real-valued costs.  Every solver and
# every checker goes through ``within_budget`` so they agree on the boundary.
BUDGET_RTOL = 1e-9


def budget_limit(budget: float) -> float:
    return budget + BUDGET_RTOL * max(1.0, abs(budget))


def within_budget(cost: float, budget: float) -> bool:
    return cost <= budget_limit(budget)


class InstanceValidationError(ValueError):
    """Raised by :func:`validate_instance`; ``errors`` lists every failed rule."""

    def __init__(self, errors: Sequence[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


class ScheduleError(AssertionError):
    """A schedule or assignment broke a feasibility invariant."""


@dataclass(frozen=True)
class Delivery:
    id: int
    t_launch: float
    t_rendezvous: float
    cost: float
    profit: float

    @property
    def density(self) -> float:
        return self.profit / self.cost


@dataclass(frozen=True)
class Instance:
    deliveries: tuple[Delivery, ...]
    budget: float
    num_drones: int
    warnings: tuple[str, ...] = field(default=(), compare=False)

    @property
    def n(self) -> int:
        return len(self.deliveries)

    def delivery(self, j: int) -> Delivery:
        """1-based lookup."""
        return self.deliveries[j - 1]

    def with_drones(self, m: int) -> Instance:
        if m < 1:
            raise InstanceValidationError([f"num_drones must be >= 1, got {m}"])
        return Instance(self.deliveries, self.budget, int(m), self.warnings)

    @property
    def integer_profits(self) -> bool:
        return all(float(d.profit).is_integer() for d in self.deliveries)


def compatible(a: Delivery, b: Delivery) -> bool:
    return a.t_rendezvous < b.t_launch or b.t_rendezvous < a.t_launch


def _field(rec: Any, name: str) -> Any:
    if isinstance(rec, Mapping):
        return rec[name]
    return getattr(rec, name)


def validate_instance(raw: Any) -> Instance:
    """Canonicalise raw input into an :class:`Instance`.

    ``raw`` may be an :class:`Instance` or a mapping with ``budget``,
    ``num_drones`` and ``deliveries`` (records as mappings or objects exposing
    ``t_launch``, ``t_rendezvous``, ``cost``, ``profit`` and optionally ``id``).

    Deliveries are sorted by launch time (ties: rendezvous time, then original
    id) and renumbered ``1..n``.  Deliveries whose cost exceeds the budget can
    never be scheduled; they are dropped and reported in ``Instance.warnings``.
    Any other rule violation raises :class:`InstanceValidationError`.
    """
    budget = _field(raw, "budget")
    num_drones = _field(raw, "num_drones")
    records = list(_field(raw, "deliveries"))

    errors: list[str] = []
    try:
        budget = float(budget)
    except (TypeError, ValueError):
        errors.append(f"budget is not a number: {budget!r}")
        budget = math.nan
    if not budget > 0 or not math.isfinite(budget):
        errors.append(f"budget must be a positive finite number, got {budget}")
    if isinstance(num_drones, bool) or not isinstance(num_drones, (int, float)) \
            or not float(num_drones).is_integer() or num_drones < 1:
        errors.append(f"num_drones must be an integer >= 1, got {num_drones!r}")

    parsed = []
    for pos, rec in enumerate(records, start=1):
        try:
            rid = int(_field(rec, "id"))
        except (KeyError, AttributeError):
            rid = pos
        try:
            tl, tr, c, p = (float(_field(rec, k))
                            for k in ("t_launch", "t_rendezvous", "cost", "profit"))
        except (KeyError, AttributeError, TypeError, ValueError) as exc:
            errors.append(f"malformed delivery record, id {rid}: {exc}")
            continue
        bad = False
        if not all(math.isfinite(v) for v in (tl, tr, c, p)):
            errors.append(f"non-finite field, id {rid}")
            bad = True
        if tl > tr:
            errors.append(f"t_launch > t_rendezvous, id {rid}")
            bad = True
        if c < 0:
            errors.append(f"negative cost, id {rid}")
            bad = True
        elif c == 0:
            errors.append(f"zero cost, id {rid}")
            bad = True
        if p < 0:
            errors.append(f"negative profit, id {rid}")
            bad = True
        if not bad:
            parsed.append((tl, tr, rid, c, p))

    ids = [r[2] for r in parsed]
    if len(set(ids)) != len(ids):
        errors.append("duplicate delivery ids")
    if errors:
        raise InstanceValidationError(errors)

    warnings = []
    kept = []
    for tl, tr, rid, c, p in parsed:
        if c > budget:
            msg = f"dropped delivery id {rid}: cost {c} exceeds budget {budget}"
            logger.warning(msg)
            warnings.append(msg)
        else:
            kept.append((tl, tr, rid, c, p))
    kept.sort()
    deliveries = tuple(Delivery(j, tl, tr, c, p)
                       for j, (tl, tr, _rid, c, p) in enumerate(kept, start=1))
    return Instance(deliveries, budget, int(num_drones), tuple(warnings))


def check_instance(X: Any, num_drones: int | None = None) -> Instance:
    """Accept an Instance or raw mapping, optionally overriding the drone count."""
    inst = X if isinstance(X, Instance) else validate_instance(X)
    if num_drones is not None:
        inst = inst.with_drones(num_drones)
    return inst


@dataclass(frozen=True)
class PredecessorTable:
    """Conflict structure of an instance.

    ``pred[j - 1]`` is L(j) in launch order: the largest k < j whose window
    ends strictly before window j starts, or 0.  ``max_degree`` is the
    maximum degree of the interval conflict graph.

    ``by_rendezvous`` lists delivery ids by rendezvous time and
    ``rendezvous_pred[r - 1]`` is the same predecessor taken in that order
    (positions, 1-based).  Only in rendezvous order does every earlier
    position up to the predecessor end before window r starts, which is
    what the profit DP needs.
    """

    pred: tuple[int, ...]
    max_degree: int
    degrees: tuple[int, ...] = field(default=(), compare=False)
    by_rendezvous: tuple[int, ...] = ()
    rendezvous_pred: tuple[int, ...] = ()

    def L(self, j: int) -> int:
        return self.pred[j - 1]


def build_predecessor_table(inst: Instance) -> PredecessorTable:
    dels = inst.deliveries
    n = len(dels)
    if n == 0:
        return PredecessorTable((), 0, (), (), ())
    # Deliveries are sorted by launch time, so any k with R_k < L_j also has
    # k < j; L(j) is then the largest index among windows ending before L_j.
    by_end = sorted(range(n), key=lambda k: (dels[k].t_rendezvous, dels[k].t_launch, k))
    ends = [dels[k].t_rendezvous for k in by_end]
    prefix_max = [0] * (n + 1)
    for pos, k in enumerate(by_end):
        prefix_max[pos + 1] = max(prefix_max[pos], k + 1)
    pred = tuple(prefix_max[bisect.bisect_left(ends, d.t_launch)] for d in dels)
    rpred = tuple(bisect.bisect_left(ends, dels[k].t_launch) for k in by_end)

    # deg(j) = (n - 1) - #{windows ending before j starts} - #{windows starting after j ends}
    starts = sorted(d.t_launch for d in dels)
    degrees = tuple(
        n - 1
        - bisect.bisect_left(ends, d.t_launch)
        - (n - bisect.bisect_right(starts, d.t_rendezvous))
        for d in dels
    )
    return PredecessorTable(pred, max(degrees), degrees,
                            tuple(k + 1 for k in by_end), rpred)


@dataclass(frozen=True)
class Assignment:
    delivery_ids: tuple[int, ...]
    total_cost: float
    total_profit: float

    @classmethod
    def of(cls, ids: Iterable[int], inst: Instance) -> Assignment:
        ids = tuple(sorted(set(ids)))
        return cls(ids,
                   math.fsum(inst.delivery(j).cost for j in ids),
                   math.fsum(inst.delivery(j).profit for j in ids))

    @classmethod
    def empty(cls) -> Assignment:
        return cls((), 0.0, 0.0)

    def __len__(self) -> int:
        return len(self.delivery_ids)

    def __contains__(self, j: object) -> bool:
        return j in self.delivery_ids


@dataclass(frozen=True)
class Schedule:
    assignments: tuple[Assignment, ...]
    total_profit: float

    @classmethod
    def of(cls, assignments: Iterable[Assignment]) -> Schedule:
        assignments = tuple(assignments)
        return cls(assignments, math.fsum(a.total_profit for a in assignments))


def _close(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-9)


def check_assignment(a: Assignment, inst: Instance, *, require_budget: bool = True) -> None:
    """Raise :class:`ScheduleError` unless ``a`` is a cached-consistent,
    compatible (and by default budget-feasible) assignment for ``inst``."""
    for j in a.delivery_ids:
        if not 1 <= j <= inst.n:
            raise ScheduleError(f"unknown delivery id {j}")
    if len(set(a.delivery_ids)) != len(a.delivery_ids):
        raise ScheduleError(f"repeated delivery in assignment {a.delivery_ids}")
    fresh = Assignment.of(a.delivery_ids, inst)
    if not (_close(fresh.total_cost, a.total_cost) and _close(fresh.total_profit, a.total_profit)):
        raise ScheduleError(f"stale cost/profit cache on {a.delivery_ids}")
    dels = [inst.delivery(j) for j in a.delivery_ids]
    for x in range(len(dels)):
        for y in range(x + 1, len(dels)):
            if not compatible(dels[x], dels[y]):
                raise ScheduleError(f"deliveries {dels[x].id} and {dels[y].id} conflict")
    if require_budget and not within_budget(fresh.total_cost, inst.budget):
        raise ScheduleError(f"assignment {a.delivery_ids} costs {fresh.total_cost} > {inst.budget}")


def check_schedule(s: Schedule, inst: Instance, num_drones: int | None = None) -> None:
    m = inst.num_drones if num_drones is None else num_drones
    if len(s.assignments) != m:
        raise ScheduleError(f"expected {m} assignments, got {len(s.assignments)}")
    seen: set[int] = set()
    for a in s.assignments:
        check_assignment(a, inst)
        if seen.intersection(a.delivery_ids):
            raise ScheduleError("a delivery is assigned to more than one drone")
        seen.update(a.delivery_ids)
    if not _close(math.fsum(a.total_profit for a in s.assignments), s.total_profit):
        raise ScheduleError("schedule total profit does not match its assignments")
