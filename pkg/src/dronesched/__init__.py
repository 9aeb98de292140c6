"""Drone delivery scheduling along a fixed truck route.

Single drone: exact profit-indexed DP and an FPTAS.  Several drones: a
density greedy with a ``m / (2 (m + Delta))`` guarantee.  Small instances can
be solved exactly by branch and bound.
"""

from .estimators import DPScheduler, ExactScheduler, FPTASScheduler, GreedyScheduler
from .generate import GenConfig, SplitMix64, generate, generate_geometric, generate_random
from .mdsp import MdspSolution, density_order, moderate_critical, select_top_m, solve_greedy_mdsp
from .model import (
    Assignment,
    Delivery,
    Instance,
    InstanceValidationError,
    PredecessorTable,
    Schedule,
    ScheduleError,
    build_predecessor_table,
    check_instance,
    check_schedule,
    compatible,
    validate_instance,
)
from .oracle import OracleResult, solve_exact
from .sdsp import SdspSolution, backtrack, build_table, fill_table, solve_dp_exact, solve_fptas

__version__ = "0.1.0"
