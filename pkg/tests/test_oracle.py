import pytest
from hypothesis import given, settings

from conftest import instances, make_instance, random_instance
from oracles import mdsp_bruteforce, mdsp_product_enumeration
from dronesched import check_schedule, solve_dp_exact, solve_exact


def test_single_delivery():
    inst = make_instance([(0, 1)], costs=[3], profits=[5], budget=4)
    assert solve_exact(inst).opt_profit == 5


def test_conflict_split_across_drones():
    inst = make_instance([(0, 2), (1, 3)], costs=[1, 1], profits=[5, 7], budget=10, m=2)
    res = solve_exact(inst)
    assert res.opt_profit == 12 and not res.timed_out
    check_schedule(res.schedule, inst)


def test_subset_dp_oracle_matches_literal_enumeration():
    for seed in range(25):
        inst = random_instance(seed, 6, m=1 + seed % 3)
        assert mdsp_bruteforce(inst) == mdsp_product_enumeration(inst)


@pytest.mark.parametrize("seed", range(30))
def test_ten_two_drones_matches_enumeration(seed):
    inst = random_instance(seed, 10, m=2, budget_share=0.25)
    res = solve_exact(inst)
    assert not res.timed_out
    check_schedule(res.schedule, inst)
    assert res.opt_profit == mdsp_product_enumeration(inst)


@settings(max_examples=150, deadline=None)
@given(instances(max_n=10, max_m=3))
def test_pruning_and_symmetry_are_sound(inst):
    ref = solve_exact(inst, use_bound=False, break_symmetry=False)
    assert ref.opt_profit == mdsp_bruteforce(inst)
    for bound in (True, False):
        for sym in (True, False):
            res = solve_exact(inst, use_bound=bound, break_symmetry=sym)
            assert res.opt_profit == ref.opt_profit
            check_schedule(res.schedule, inst)


@settings(max_examples=150, deadline=None)
@given(instances(max_n=10, max_m=1))
def test_single_drone_agrees_with_dp(inst):
    assert solve_exact(inst).opt_profit == solve_dp_exact(inst).profit


def test_pruning_reduces_nodes():
    inst = random_instance(5, 12, m=2)
    assert solve_exact(inst).nodes_explored < solve_exact(inst, use_bound=False).nodes_explored


def test_node_limit_returns_incumbent():
    inst = random_instance(8, 14, m=3, budget_share=0.2)
    res = solve_exact(inst, node_limit=50)
    assert res.timed_out and res.nodes_explored == 50
    check_schedule(res.schedule, inst)
    assert res.opt_profit <= solve_exact(inst).opt_profit


def test_bad_node_limit():
    with pytest.raises(ValueError):
        solve_exact(make_instance([(0, 1)]), node_limit=0)
