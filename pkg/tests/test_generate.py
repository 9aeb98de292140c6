import math

import pytest

from oracles import brute_max_degree
from dronesched import build_predecessor_table, validate_instance
from dronesched.generate import (
    GenConfig,
    GeneratorConfigError,
    SplitMix64,
    TruckPath,
    generate,
    generate_geometric,
    generate_random,
    generate_scene,
    plan_sortie,
)
from dronesched.io import dump_instance


def test_splitmix_reference_stream():
    # published SplitMix64 outputs for seed 0
    rng = SplitMix64(0)
    assert [rng.next_u64() for _ in range(3)] == [
        0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_splitmix_ranges():
    rng = SplitMix64(123)
    xs = [rng.random() for _ in range(2000)]
    assert 0 <= min(xs) and max(xs) < 1
    ks = {rng.randint(3, 5) for _ in range(200)}
    assert ks == {3, 4, 5}


class TestRandomMode:
    def test_deterministic(self):
        cfg = GenConfig(seed=1, n=5)
        assert generate_random(cfg) == generate_random(cfg)
        assert dump_instance(generate_random(cfg)) == dump_instance(generate_random(cfg))

    def test_seed_matters(self):
        assert generate_random(GenConfig(seed=1)) != generate_random(GenConfig(seed=2))

    @pytest.mark.parametrize("seed", range(10))
    def test_no_overlap(self, seed):
        inst = generate_random(GenConfig(seed=seed, n=30, overlap_density=0.0))
        assert build_predecessor_table(inst).max_degree == 0

    def test_full_overlap(self):
        inst = generate_random(GenConfig(seed=4, n=5, overlap_density=1.0))
        assert brute_max_degree(inst) == 4
        assert build_predecessor_table(inst).max_degree == 4

    def test_degree_tracks_density(self):
        degs = [build_predecessor_table(generate_random(
            GenConfig(seed=3, n=40, overlap_density=r))).max_degree for r in (0.0, 0.1, 0.4, 1.0)]
        assert degs == sorted(degs) and degs[0] == 0 and degs[-1] == 39

    @pytest.mark.parametrize("seed", range(20))
    def test_valid_without_warnings(self, seed):
        inst = generate_random(GenConfig(seed=seed, n=15, num_drones=1 + seed % 3,
                                         budget_factor=0.05))
        assert inst.n == 15 and inst.warnings == ()
        assert all(d.cost <= inst.budget for d in inst.deliveries)

    def test_real_values(self):
        inst = generate_random(GenConfig(seed=2, n=6, integer_values=False))
        assert not inst.integer_profits

    @pytest.mark.parametrize("kwargs", [
        dict(profit_range=(5, 1)), dict(cost_range=(0, 3)), dict(n=0),
        dict(overlap_density=1.5), dict(budget_factor=0), dict(mode="spiral"),
        dict(cost_range=(1.2, 1.8)),
    ])
    def test_bad_config(self, kwargs):
        with pytest.raises(GeneratorConfigError):
            generate_random(GenConfig(**kwargs))


class TestGeometricMode:
    def test_figure_like_layout(self):
        cfg = GenConfig(seed=8, n=8, mode="geometric", waypoint_count=3, num_drones=2)
        scene = generate_scene(cfg)
        assert len(scene.path.waypoints) == 3
        inst = scene.instance
        assert inst.n == 8 and inst.warnings == ()
        assert all(d.t_launch < d.t_rendezvous for d in inst.deliveries)

    @pytest.mark.parametrize("seed", range(15))
    def test_drone_makes_rendezvous(self, seed):
        cfg = GenConfig(seed=seed, n=12, mode="geometric", waypoint_count=2 + seed % 4,
                        drone_speed=1.5 + seed % 3)
        scene = generate_scene(cfg)
        assert scene.instance.warnings == ()
        for s, d in zip(scene.sorties, scene.instance.deliveries):
            assert (s.t_launch, s.t_rendezvous) == (d.t_launch, d.t_rendezvous)
            flight = math.dist(scene.path.point(s.s_launch), s.customer) + \
                math.dist(s.customer, scene.path.point(s.s_rendezvous))
            assert flight == pytest.approx(s.flight_distance)
            assert flight / cfg.drone_speed <= d.t_rendezvous - d.t_launch + 1e-9
            assert d.cost >= s.cost > 0

    def test_deterministic(self):
        cfg = GenConfig(seed=5, n=10, mode="geometric")
        assert dump_instance(generate_geometric(cfg)) == dump_instance(generate(cfg))

    def test_truck_time_monotone_along_path(self):
        path = TruckPath(((0.0, 0.0), (30.0, 10.0), (70.0, -5.0)))
        ss = [path.length * k / 50 for k in range(51)]
        times = [s / 1.0 for s in ss]
        assert all(a < b for a, b in zip(times, times[1:]))
        pts = [path.point(s) for s in ss]
        assert pts[0] == (0.0, 0.0) and pts[-1] == pytest.approx((70.0, -5.0))
        # arc length between samples matches the chord on each straight piece
        for a, b, sa, sb in zip(pts, pts[1:], ss, ss[1:]):
            assert math.dist(a, b) <= sb - sa + 1e-9

    def test_customer_on_route_rejected(self):
        path = TruckPath(((0.0, 0.0), (100.0, 0.0)))
        assert plan_sortie(path, (40.0, 0.0), 40.0, 40.0, truck_speed=1, drone_speed=2) is None
        s = plan_sortie(path, (40.0, 5.0), 38.0, 41.0, truck_speed=1, drone_speed=2)
        assert s is not None and s.cost > 0 and s.t_rendezvous > s.t_launch

    def test_rendezvous_pushed_later(self):
        path = TruckPath(((0.0, 0.0), (100.0, 0.0)))
        s = plan_sortie(path, (10.0, 20.0), 10.0, 10.5, truck_speed=1, drone_speed=2)
        assert s.s_rendezvous > 10.5
        assert s.flight_distance / 2 <= s.t_rendezvous - s.t_launch

    def test_unreachable(self):
        path = TruckPath(((0.0, 0.0), (10.0, 0.0)))
        assert plan_sortie(path, (5.0, 50.0), 5.0, 6.0, truck_speed=1, drone_speed=1) is None
        with pytest.raises(GeneratorConfigError):
            generate_geometric(GenConfig(mode="geometric", n=3, drone_speed=0.05, max_retries=5))

    def test_single_waypoint_rejected(self):
        with pytest.raises(GeneratorConfigError):
            generate_geometric(GenConfig(mode="geometric", waypoint_count=1))

    def test_distance_profit_model(self):
        inst = generate_geometric(GenConfig(seed=2, n=10, mode="geometric",
                                            profit_model="distance", profit_range=(1, 1000)))
        assert validate_instance(inst) == inst
