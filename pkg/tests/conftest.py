import pytest
from hypothesis import strategies as st

from dronesched import check_schedule, solve_greedy_mdsp, validate_instance
from dronesched.generate import SplitMix64
from dronesched.model import check_assignment

_ACCEPTANCE: list[str] = []


def make_instance(intervals, costs=None, profits=None, budget=100.0, m=1):
    n = len(intervals)
    costs = costs or [1.0] * n
    profits = profits or [1.0] * n
    return validate_instance(dict(
        budget=budget, num_drones=m,
        deliveries=[dict(id=k + 1, t_launch=a, t_rendezvous=b, cost=c, profit=p)
                    for k, ((a, b), c, p) in enumerate(zip(intervals, costs, profits))],
    ))


def random_instance(seed, n, m=1, max_profit=50, max_cost=20, budget_share=0.5,
                    integer=True, span=30.0, max_len=8.0):
    """Independent of the package generator: uniformly scattered windows."""
    rng = SplitMix64(seed)
    recs = []
    for k in range(n):
        a = round(rng.uniform(0, span), 3)
        b = round(a + rng.uniform(0, max_len), 3)
        c = float(rng.randint(1, max_cost))
        p = float(rng.randint(0, max_profit)) if integer else rng.uniform(0, max_profit)
        recs.append(dict(id=k + 1, t_launch=a, t_rendezvous=b, cost=c, profit=p))
    total = sum(r["cost"] for r in recs)
    budget = max(max(r["cost"] for r in recs), round(budget_share * total / m))
    return validate_instance(dict(budget=budget, num_drones=m, deliveries=recs))


def greedy(inst, pt=None, slot_strategy="best-fit"):
    """Every greedy run in the suite goes through here: blanket feasibility check."""
    sol = solve_greedy_mdsp(inst, pt, slot_strategy)
    check_schedule(sol.schedule, inst)
    for a in sol.slots:
        check_assignment(a, inst)
    return sol


@st.composite
def instances(draw, max_n=10, max_m=3, integer=True):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, max_m))
    recs = []
    for k in range(n):
        a = draw(st.integers(0, 40))
        length = draw(st.integers(0, 10))
        c = draw(st.integers(1, 15))
        p = draw(st.integers(0, 30)) if integer else draw(
            st.floats(0, 30, allow_nan=False, allow_infinity=False))
        recs.append(dict(id=k + 1, t_launch=float(a), t_rendezvous=float(a + length),
                         cost=float(c), profit=float(p)))
    budget = draw(st.integers(max(r["cost"] for r in recs), 60))
    return validate_instance(dict(budget=float(budget), num_drones=m, deliveries=recs))


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE.append


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
