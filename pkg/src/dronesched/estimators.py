"""scikit-learn style wrappers around the solvers.

Each scheduler takes its hyper-parameters in ``__init__`` (so ``get_params``,
``set_params`` and ``sklearn.base.clone`` work), solves in ``fit`` and exposes
the result through trailing-underscore attributes::

    >>> from dronesched import FPTASScheduler
    >>> sched = FPTASScheduler(epsilon=0.1).fit(instance)   # doctest: +SKIP
    >>> sched.profit_, sched.schedule_                      # doctest: +SKIP

``X`` is an :class:`~dronesched.model.Instance` or a raw mapping accepted by
:func:`~dronesched.model.validate_instance`.  ``y`` is ignored.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .mdsp import solve_greedy_mdsp
from .model import Schedule, build_predecessor_table, check_instance, check_schedule
from .oracle import solve_exact
from .sdsp import solve_dp_exact, solve_fptas


class _Scheduler(BaseEstimator):
    algorithm = ""

    def _solve(self, inst, pt):
        raise NotImplementedError

    def fit(self, X, y=None):
        inst = check_instance(X, getattr(self, "num_drones", None))
        pt = build_predecessor_table(inst)
        schedule, self.solution_ = self._solve(inst, pt)
        check_schedule(schedule, inst)
        self.instance_ = inst
        self.max_degree_ = pt.max_degree
        self.schedule_ = schedule
        self.profit_ = schedule.total_profit
        return self

    def predict(self, X) -> Schedule:
        """Solve ``X`` and return its schedule (the fitted state is replaced)."""
        return self.fit(X).schedule_

    def score(self, X, y=None) -> float:
        return self.fit(X).profit_

    def _check_fitted(self):
        if not hasattr(self, "schedule_"):
            raise NotFittedError(f"{type(self).__name__} is not fitted yet")


class DPScheduler(_Scheduler):
    """Exact single-drone scheduler; integer profits only."""

    algorithm = "dp"

    def _solve(self, inst, pt):
        sol = solve_dp_exact(inst, pt)
        return Schedule.of([sol.assignment]), sol

    def fit(self, X, y=None):
        return super().fit(check_instance(X, 1))


class FPTASScheduler(_Scheduler):
    algorithm = "fptas"

    def __init__(self, epsilon: float = 0.1):
        self.epsilon = epsilon

    def _solve(self, inst, pt):
        sol = solve_fptas(inst, self.epsilon, pt)
        return Schedule.of([sol.assignment]), sol

    def fit(self, X, y=None):
        return super().fit(check_instance(X, 1))


class GreedyScheduler(_Scheduler):
    """Multiple-drone density greedy.  ``num_drones`` overrides the instance."""

    algorithm = "greedy"

    def __init__(self, slot_strategy: str = "best-fit", num_drones: int | None = None):
        self.slot_strategy = slot_strategy
        self.num_drones = num_drones

    def _solve(self, inst, pt):
        sol = solve_greedy_mdsp(inst, pt, self.slot_strategy)
        return sol.schedule, sol

    @property
    def ratio_bound_(self) -> float:
        self._check_fitted()
        return self.solution_.ratio_bound


class ExactScheduler(_Scheduler):
    algorithm = "exact"

    def __init__(self, node_limit: int = 2_000_000, num_drones: int | None = None):
        self.node_limit = node_limit
        self.num_drones = num_drones

    def _solve(self, inst, pt):
        res = solve_exact(inst, self.node_limit)
        return res.schedule, res

    @property
    def timed_out_(self) -> bool:
        self._check_fitted()
        return self.solution_.timed_out
