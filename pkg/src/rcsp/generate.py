"""Seeded random instance generation.

Generated graphs are DAGs whose arcs go from lower to higher node ids, with
source 1 and sink n.  Budgets and windows are drawn around the consumption
range actually reachable, so a fair share of instances is feasible and a
fair share is tight.
"""
from __future__ import annotations

import random

from .core import Arc, Instance, Mode, Wait, count_paths


def _reach_bounds(n, arcs, R):
    """Per node and resource, the min and max consumption over 1-rooted paths."""
    lo = [[None] * R for _ in range(n + 1)]
    hi = [[None] * R for _ in range(n + 1)]
    lo[1] = [0] * R
    hi[1] = [0] * R
    by_tail = sorted(arcs, key=lambda a: a.tail)
    for a in by_tail:  # tails in increasing order is a topological sweep
        for r in range(R):
            if lo[a.tail][r] is None:
                continue
            x = lo[a.tail][r] + a.consumption[r]
            y = hi[a.tail][r] + a.consumption[r]
            if lo[a.head][r] is None or x < lo[a.head][r]:
                lo[a.head][r] = x
            if hi[a.head][r] is None or y > hi[a.head][r]:
                hi[a.head][r] = y
    return lo, hi


def random_instance(seed, n=6, arc_density=0.5, R=1, cost_range=(1, 20),
                    consumption_range=(0, 10), window_mode="final",
                    wait="nowait") -> Instance:
    """A random DAG instance, fully determined by its arguments."""
    if n < 2:
        raise ValueError("need at least two nodes")
    if not 0 <= arc_density <= 1:
        raise ValueError("arc_density must lie in [0, 1]")
    if R < 0:
        raise ValueError("resource count must be nonnegative")
    if cost_range[0] > cost_range[1] or consumption_range[0] > consumption_range[1]:
        raise ValueError("empty value range")
    if consumption_range[0] < 0:
        raise ValueError("consumptions must be nonnegative")
    rng = random.Random(seed)
    arcs = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if arc_density >= 1 or rng.random() < arc_density:
                c = rng.randint(*cost_range)
                t = tuple(rng.randint(*consumption_range) for _ in range(R))
                arcs.append(Arc(i, j, c, t))
    mode = Mode(window_mode)
    lo, hi = _reach_bounds(n, arcs, R)
    if mode is Mode.FINAL:
        budget = []
        for r in range(R):
            a, b = lo[n][r], hi[n][r]
            if a is None:
                budget.append(rng.randint(*consumption_range))
            else:
                # reach a little below the cheapest path so some draws are infeasible
                budget.append(rng.randint(max(0, a - (b - a) // 4 - 1), b))
        return Instance(n, tuple(arcs), R, 1, n, mode, Wait(wait), budget=tuple(budget))

    lower, upper = [], []
    for i in range(1, n + 1):
        row_lo, row_hi = [], []
        for r in range(R):
            e, l = lo[i][r], hi[i][r]
            if e is None:
                e, l = 0, consumption_range[1] * (i - 1)
            if i == 1:
                a = 0
                b = rng.randint(0, 2)
            else:
                span = l - e
                a = rng.randint(0, e + span // 2) if rng.random() < 0.6 else 0
                b = rng.randint(max(a, e), l + 2)
            row_lo.append(a)
            row_hi.append(b)
        lower.append(tuple(row_lo))
        upper.append(tuple(row_hi))
    return Instance(n, tuple(arcs), R, 1, n, mode, Wait(wait),
                    lower=tuple(lower), upper=tuple(upper))


def desk_suite(count, seed=0, n=(4, 12), R=(0, 3), density=(0.2, 0.6),
               cost_range=(1, 20), consumption_range=(0, 10), modes=("final", "windows"),
               waits=("nowait", "wait"), max_paths=200, min_paths=1):
    """Yield ``count`` seeded instances whose s-t path count lies in range.

    Instance parameters are themselves drawn from a meta generator seeded by
    ``seed``; candidates with too many (or too few) paths are skipped.
    """
    meta = random.Random(seed)
    made = 0
    while made < count:
        s = meta.randrange(2**31)
        kw = dict(
            n=meta.randint(*n),
            arc_density=meta.uniform(*density),
            R=meta.randint(*R),
            cost_range=cost_range,
            consumption_range=consumption_range,
            window_mode=meta.choice(modes),
            wait=meta.choice(waits),
        )
        inst = random_instance(s, **kw)
        if min_paths <= count_paths(inst) <= max_paths:
            made += 1
            yield inst
