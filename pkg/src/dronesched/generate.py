"""Seeded benchmark instances.

Two modes:

``random``
    Windows laid out on a timeline.  ``overlap_density`` slides between a
    layout where every window sits in its own slot (no conflicts) and one
    where all windows share a common time point (complete conflict graph).

``geometric``
    A piecewise-linear truck route through seeded waypoints.  Each customer
    sits off the route; the drone leaves the truck at a launch point, flies to
    the customer and meets the truck at a later rendezvous point.  Times are
    truck arrival times and the cost is ``energy_rate * flight distance``.

All randomness comes from :class:`SplitMix64`, whose constants are fixed
below, so a given config yields the same instance on every platform and in
any language that implements the same stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .model import Instance, validate_instance

_MASK = (1 << 64) - 1


class GeneratorConfigError(ValueError):
    pass


class SplitMix64:
    """SplitMix64 (Steele, Lea, Flood 2014).

    state += 0x9E3779B97F4A7C15
    z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    out = z ^ (z >> 31)          (all arithmetic mod 2**64)

    Floats take the top 53 bits: ``(out >> 11) * 2**-53``.
    """

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def randint(self, lo: int, hi: int) -> int:
        """Inclusive; modulo reduction (bias below 2**-40 for small spans)."""
        return lo + self.next_u64() % (hi - lo + 1)


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    n: int = 10
    mode: str = "random"
    num_drones: int = 1
    profit_range: tuple[float, float] = (1, 50)
    cost_range: tuple[float, float] = (1, 20)
    integer_values: bool = True
    # B = budget_factor * mean cost * (n / num_drones), never below the costliest delivery
    budget_factor: float = 0.5
    overlap_density: float = 0.3
    truck_speed: float = 1.0
    drone_speed: float = 2.0
    waypoint_count: int = 3
    energy_rate: float = 1.0
    profit_model: str = "independent"
    max_retries: int = 100

    def validate(self) -> None:
        errs = []
        if self.n < 1:
            errs.append("n must be >= 1")
        if self.num_drones < 1:
            errs.append("num_drones must be >= 1")
        for name in ("profit_range", "cost_range"):
            lo, hi = getattr(self, name)
            if not lo <= hi:
                errs.append(f"{name} is empty: [{lo}, {hi}]")
        if self.cost_range[0] <= 0 and self.mode == "random":
            errs.append("cost_range must be positive")
        if self.profit_range[0] < 0:
            errs.append("profit_range must be nonnegative")
        if self.integer_values and math.ceil(self.cost_range[0]) > math.floor(self.cost_range[1]):
            errs.append("cost_range contains no integer")
        if self.integer_values and math.ceil(self.profit_range[0]) > math.floor(self.profit_range[1]):
            errs.append("profit_range contains no integer")
        if not 0 <= self.overlap_density <= 1:
            errs.append("overlap_density must lie in [0, 1]")
        if self.budget_factor <= 0:
            errs.append("budget_factor must be positive")
        if self.mode not in ("random", "geometric"):
            errs.append(f"unknown mode {self.mode!r}")
        if self.mode == "geometric":
            if self.waypoint_count < 2:
                errs.append("geometric mode needs waypoint_count >= 2")
            if self.truck_speed <= 0 or self.drone_speed <= 0:
                errs.append("speeds must be positive")
            if self.energy_rate <= 0:
                errs.append("energy_rate must be positive")
        if self.profit_model not in ("independent", "distance"):
            errs.append(f"unknown profit_model {self.profit_model!r}")
        if errs:
            raise GeneratorConfigError("; ".join(errs))


def _draw(rng: SplitMix64, lo: float, hi: float, integer: bool) -> float:
    if integer:
        return float(rng.randint(math.ceil(lo), math.floor(hi)))
    return rng.uniform(lo, hi)


def _budget(cfg: GenConfig, costs: list[float]) -> float:
    mean = (cfg.cost_range[0] + cfg.cost_range[1]) / 2 if cfg.mode == "random" \
        else math.fsum(costs) / len(costs)
    b = cfg.budget_factor * mean * (cfg.n / cfg.num_drones)
    if cfg.integer_values:
        b = float(math.ceil(b))
    return max(b, max(costs))


def generate_random(cfg: GenConfig) -> Instance:
    cfg.validate()
    if cfg.mode != "random":
        raise GeneratorConfigError("generate_random needs mode='random'")
    rng = SplitMix64(cfg.seed)
    rho = cfg.overlap_density
    horizon = 10.0 * cfg.n
    records = []
    for k in range(cfg.n):
        # slot k spans [10k, 10k + 10); offset <= 2 and width <= 5 keep slots apart at rho = 0,
        # and at rho = 1 every window covers [2, horizon]
        offset = rng.uniform(0.0, 2.0)
        width = rng.uniform(1.0, 5.0)
        t_l = (1.0 - rho) * 10.0 * k + offset
        t_r = t_l + width + rho * horizon
        cost = _draw(rng, *cfg.cost_range, cfg.integer_values)
        profit = _draw(rng, *cfg.profit_range, cfg.integer_values)
        records.append(dict(id=k + 1, t_launch=t_l, t_rendezvous=t_r, cost=cost, profit=profit))
    budget = _budget(cfg, [r["cost"] for r in records])
    return validate_instance(dict(budget=budget, num_drones=cfg.num_drones, deliveries=records))


@dataclass(frozen=True)
class TruckPath:
    waypoints: tuple[tuple[float, float], ...]
    cumulative: tuple[float, ...] = field(init=False)

    def __post_init__(self):
        acc = [0.0]
        for a, b in zip(self.waypoints, self.waypoints[1:]):
            acc.append(acc[-1] + math.dist(a, b))
        object.__setattr__(self, "cumulative", tuple(acc))

    @property
    def length(self) -> float:
        return self.cumulative[-1]

    def point(self, s: float) -> tuple[float, float]:
        s = min(max(s, 0.0), self.length)
        for k in range(len(self.waypoints) - 1):
            s0, s1 = self.cumulative[k], self.cumulative[k + 1]
            if s <= s1 or k == len(self.waypoints) - 2:
                a, b = self.waypoints[k], self.waypoints[k + 1]
                f = 0.0 if s1 == s0 else (s - s0) / (s1 - s0)
                return (a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1]))
        raise AssertionError("unreachable")

    def distance_to(self, q: tuple[float, float]) -> float:
        best = math.inf
        for (ax, ay), (bx, by) in zip(self.waypoints, self.waypoints[1:]):
            dx, dy = bx - ax, by - ay
            f = ((q[0] - ax) * dx + (q[1] - ay) * dy) / (dx * dx + dy * dy)
            f = min(max(f, 0.0), 1.0)
            best = min(best, math.hypot(q[0] - ax - f * dx, q[1] - ay - f * dy))
        return best

    def normal(self, s: float) -> tuple[float, float]:
        for k in range(len(self.waypoints) - 1):
            if s <= self.cumulative[k + 1] or k == len(self.waypoints) - 2:
                (ax, ay), (bx, by) = self.waypoints[k], self.waypoints[k + 1]
                length = math.hypot(bx - ax, by - ay)
                return (-(by - ay) / length, (bx - ax) / length)
        raise AssertionError("unreachable")


@dataclass(frozen=True)
class Sortie:
    customer: tuple[float, float]
    s_launch: float
    s_rendezvous: float
    t_launch: float
    t_rendezvous: float
    flight_distance: float
    cost: float


def plan_sortie(path: TruckPath, customer: tuple[float, float], s_launch: float,
                s_rendezvous: float, *, truck_speed: float, drone_speed: float,
                energy_rate: float = 1.0, step: float = 1.0) -> Sortie | None:
    """Launch at arc position ``s_launch`` and meet the truck no earlier than
    ``s_rendezvous``, pushing the rendezvous forward until the drone makes it.

    Returns ``None`` when the route ends first or the customer lies on the
    route (no detour, so nothing for a drone to do).
    """
    if path.distance_to(customer) <= 1e-9:
        return None
    if s_rendezvous <= s_launch:
        s_rendezvous = s_launch + step
    launch = path.point(s_launch)
    while s_rendezvous <= path.length:
        dist = math.dist(launch, customer) + math.dist(customer, path.point(s_rendezvous))
        if dist / drone_speed <= (s_rendezvous - s_launch) / truck_speed:
            return Sortie(customer, s_launch, s_rendezvous, s_launch / truck_speed,
                          s_rendezvous / truck_speed, dist, energy_rate * dist)
        s_rendezvous += step
    return None


@dataclass(frozen=True)
class Scene:
    path: TruckPath
    sorties: tuple[Sortie, ...]
    instance: Instance


def generate_scene(cfg: GenConfig) -> Scene:
    cfg.validate()
    if cfg.mode != "geometric":
        raise GeneratorConfigError("generate_geometric needs mode='geometric'")
    rng = SplitMix64(cfg.seed)
    pts = [(0.0, 0.0)]
    for _ in range(cfg.waypoint_count - 1):
        x, y = pts[-1]
        pts.append((x + rng.uniform(20.0, 60.0), rng.uniform(-20.0, 20.0)))
    path = TruckPath(tuple(pts))

    sorties = []
    for _ in range(cfg.n):
        for _attempt in range(cfg.max_retries):
            s_c = rng.uniform(0.0, 0.85 * path.length)
            off = rng.uniform(2.0, 15.0) * (1 if rng.random() < 0.5 else -1)
            base, nrm = path.point(s_c), path.normal(s_c)
            customer = (base[0] + off * nrm[0], base[1] + off * nrm[1])
            s_l = max(0.0, s_c - rng.uniform(0.0, 10.0))
            s_r = s_c + rng.uniform(0.0, 10.0)
            sortie = plan_sortie(path, customer, s_l, s_r, truck_speed=cfg.truck_speed,
                                 drone_speed=cfg.drone_speed, energy_rate=cfg.energy_rate)
            if sortie is not None:
                sorties.append(sortie)
                break
        else:
            raise GeneratorConfigError(
                f"no reachable customer after {cfg.max_retries} draws; "
                "raise drone_speed or lengthen the route"
            )

    sorties.sort(key=lambda s: (s.t_launch, s.t_rendezvous))
    costs = [s.cost for s in sorties]
    if cfg.integer_values:
        # round up so the stored cost never understates the flight
        costs = [float(math.ceil(c)) for c in costs]
    records = []
    for k, (s, c) in enumerate(zip(sorties, costs), start=1):
        if cfg.profit_model == "distance":
            lo, hi = cfg.profit_range
            p = min(hi, max(lo, c * rng.uniform(0.5, 1.5)))
            p = float(round(p)) if cfg.integer_values else p
        else:
            p = _draw(rng, *cfg.profit_range, cfg.integer_values)
        records.append(dict(id=k, t_launch=s.t_launch, t_rendezvous=s.t_rendezvous, cost=c, profit=p))
    budget = _budget(cfg, costs)
    inst = validate_instance(dict(budget=budget, num_drones=cfg.num_drones, deliveries=records))
    return Scene(path, tuple(sorties), inst)


def generate_geometric(cfg: GenConfig) -> Instance:
    return generate_scene(cfg).instance


def generate(cfg: GenConfig) -> Instance:
    if cfg.mode == "geometric":
        return generate_geometric(cfg)
    return generate_random(cfg)
