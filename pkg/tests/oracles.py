"""Brute-force references.  Nothing here shares code with the solvers beyond
reading the Instance fields."""

from __future__ import annotations

import itertools

import numpy as np


def brute_pred(inst):
    dels = inst.deliveries
    out = []
    for j, d in enumerate(dels, start=1):
        ks = [k for k in range(1, j) if dels[k - 1].t_rendezvous < d.t_launch]
        out.append(max(ks, default=0))
    return out


def intersects(a, b):
    return max(a.t_launch, b.t_launch) <= min(a.t_rendezvous, b.t_rendezvous)


def brute_max_degree(inst):
    dels = inst.deliveries
    return max((sum(1 for k, e in enumerate(dels) if k != j and intersects(d, e))
                for j, d in enumerate(dels)), default=0)


def _subset_tables(inst):
    """profit, cost and validity of every subset mask (bit k = delivery k+1)."""
    n = inst.n
    masks = np.arange(1 << n, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(n)) & 1).astype(bool)
    profit = bits @ np.array([d.profit for d in inst.deliveries], dtype=float)
    cost = bits @ np.array([d.cost for d in inst.deliveries], dtype=float)
    ok = cost <= inst.budget + 1e-9 * max(1.0, inst.budget)
    dels = inst.deliveries
    for a in range(n):
        for b in range(a + 1, n):
            if intersects(dels[a], dels[b]):
                ok &= ~(bits[:, a] & bits[:, b])
    return masks, profit, ok


def sdsp_bruteforce(inst):
    """(best profit, best id tuple) over all 2^n subsets."""
    masks, profit, ok = _subset_tables(inst)
    vals = np.where(ok, profit, -1.0)
    best = int(np.argmax(vals))
    ids = tuple(k + 1 for k in range(inst.n) if best >> k & 1)
    return float(vals[best]), ids


def mdsp_bruteforce(inst, m=None):
    """Optimal total profit for ``m`` drones by a DP over subsets:
    f_k[U] = best profit packing k disjoint feasible sets inside U."""
    m = inst.num_drones if m is None else m
    masks, profit, ok = _subset_tables(inst)
    full = len(masks) - 1
    # f1[U] = best single feasible subset of U (superset max over bits)
    f = np.where(ok, profit, 0.0)
    for k in range(inst.n):
        with_bit = (masks >> k) & 1 == 1
        f[with_bit] = np.maximum(f[with_bit], f[masks[with_bit] ^ (1 << k)])
    feasible = masks[ok]
    for _ in range(m - 1):
        nxt = f.copy()
        for T in feasible:
            sup = masks[(masks & T) == T]
            nxt[sup] = np.maximum(nxt[sup], profit[T] + f[sup ^ T])
        f = nxt
    return float(f[full])


def mdsp_product_enumeration(inst, m=None):
    """Literal (m+1)^n enumeration: each delivery skipped or given to a drone."""
    m = inst.num_drones if m is None else m
    dels = inst.deliveries
    best = 0.0
    for choice in itertools.product(range(m + 1), repeat=inst.n):
        valid = True
        for i in range(1, m + 1):
            mine = [d for d, c in zip(dels, choice) if c == i]
            if sum(d.cost for d in mine) > inst.budget + 1e-9 * max(1.0, inst.budget):
                valid = False
                break
            if any(intersects(a, b) for a, b in itertools.combinations(mine, 2)):
                valid = False
                break
        if valid:
            best = max(best, sum(d.profit for d, c in zip(dels, choice) if c))
    return best
