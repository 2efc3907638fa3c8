"""Instance reduction before solving.

``reduce_windows`` tightens per-node resource windows to a fixpoint and
deletes nodes and arcs that no feasible path can use.  ``pretraitement``
works on sink-budget instances: it brackets the optimum between a lower and
an upper bound using shortest-path trees on every metric, and prunes
whatever cannot lie on a feasible path or beat the upper bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import _graph
from .core import Instance, Mode, Path, Wait, make_path


def _subinstance(inst: Instance, alive_arcs, **changes):
    """Copy of ``inst`` restricted to alive arcs, plus new-to-old arc index map."""
    keep = [k for k, ok in enumerate(alive_arcs) if ok]
    sub = inst.replace(arcs=tuple(inst.arcs[k] for k in keep), **changes)
    return sub, tuple(keep)


# -- window reduction ----------------------------------------------------


@dataclass
class ReductionReport:
    instance: Instance
    removed_nodes: list
    removed_arcs: list
    iterations: int
    arc_map: tuple = ()
    infeasible: bool = False
    bounds_changed: bool = False

    @property
    def changed(self) -> bool:
        return bool(self.removed_nodes or self.removed_arcs) or self.bounds_changed


def reduce_windows(inst: Instance, max_iterations: int | None = None) -> ReductionReport:
    """Tighten windows by forward/backward propagation until nothing changes.

    Forward, a node's window is clipped to what its predecessors can deliver;
    backward, to what its successors can accept.  Nodes whose window empties
    are deleted together with their arcs.  Without waiting, an arc is deleted
    when even the latest departure arrives before the head's window opens.

    With waiting, two of the updates need the clamp to stay exact: the
    forward upper bound never drops below the node's own lower bound (an
    early arrival is lifted to it), and the backward lower bound never rises
    past the node's upper bound.

    The feasible s-t path set is unchanged.  Deleted nodes keep their
    original windows in the returned instance and become isolated, so node
    ids stay stable.
    """
    if inst.mode is not Mode.WINDOWS:
        raise ValueError("reduce_windows needs per-node windows; call final_to_windows first")
    n, R = inst.n, inst.resources
    wait = inst.wait is Wait.WAIT
    lo = [None] + [list(row) for row in inst.lower]
    hi = [None] + [list(row) for row in inst.upper]
    node_alive = [False] + [True] * n
    arc_alive = [True] * inst.m
    arcs = inst.arcs
    order = inst.topological_order or list(range(1, n + 1))
    limit = max_iterations if max_iterations is not None else max(1, n * max(R, 1) * 64)

    def live(k):
        a = arcs[k]
        return arc_alive[k] and node_alive[a.tail] and node_alive[a.head]

    iterations = 0
    any_bound_change = False
    while True:
        iterations += 1
        if iterations > limit:
            raise RuntimeError(
                f"window reduction did not settle within {limit} iterations; "
                "windows are probably non-integral on a cyclic graph"
            )
        changed = False
        for i in order:
            if not node_alive[i] or i == inst.source:
                continue
            preds = [k for k in inst.in_arcs[i] if live(k)]
            if not preds:
                continue
            for r in range(R):
                minp = min(lo[arcs[k].tail][r] + arcs[k].consumption[r] for k in preds)
                maxp = max(hi[arcs[k].tail][r] + arcs[k].consumption[r] for k in preds)
                if wait:
                    maxp = max(maxp, lo[i][r])
                if lo[i][r] < minp:
                    lo[i][r] = minp
                    changed = True
                if hi[i][r] > maxp:
                    hi[i][r] = maxp
                    changed = True
        for i in reversed(order):
            if not node_alive[i] or i == inst.sink:
                continue
            succs = [k for k in inst.out_arcs[i] if live(k)]
            if not succs:
                continue
            for r in range(R):
                mins = min(lo[arcs[k].head][r] - arcs[k].consumption[r] for k in succs)
                maxs = max(hi[arcs[k].head][r] - arcs[k].consumption[r] for k in succs)
                if wait:
                    mins = min(mins, hi[i][r])
                if lo[i][r] < mins:
                    lo[i][r] = mins
                    changed = True
                if hi[i][r] > maxs:
                    hi[i][r] = maxs
                    changed = True
        any_bound_change |= changed

        if not wait:
            for k, a in enumerate(arcs):
                if live(k) and any(
                    hi[a.tail][r] + a.consumption[r] < lo[a.head][r] for r in range(R)
                ):
                    arc_alive[k] = False
                    changed = True
        for i in range(1, n + 1):
            if node_alive[i] and any(hi[i][r] < lo[i][r] for r in range(R)):
                node_alive[i] = False
                changed = True
        if not changed:
            break

    # run to the fixpoint even when s or t dies, so a second pass is a no-op
    infeasible = not (node_alive[inst.source] and node_alive[inst.sink])
    removed_nodes = [i for i in range(1, n + 1) if not node_alive[i]]
    keep_arcs = [live(k) for k in range(inst.m)]
    removed_arcs = [k for k, ok in enumerate(keep_arcs) if not ok]
    lower, upper = [], []
    for i in range(1, n + 1):
        if node_alive[i]:
            lower.append(tuple(lo[i]))
            upper.append(tuple(hi[i]))
        else:
            lower.append(inst.lower[i - 1])
            upper.append(inst.upper[i - 1])
    reduced, arc_map = _subinstance(inst, keep_arcs, lower=tuple(lower), upper=tuple(upper))
    return ReductionReport(reduced, removed_nodes, removed_arcs, iterations, arc_map,
                           infeasible, any_bound_change)


# -- bounds and pruning for sink budgets ---------------------------------


def shortest_path_tree(inst: Instance, metric="cost", direction="from_source"):
    """Shortest-path tree on cost (``"cost"`` or 0) or resource ``r`` (1-based).

    ``direction`` is ``"from_source"`` or ``"into_sink"``.  The result has
    ``dist[i]`` (``math.inf`` when unreachable) and ``arcs_to(i)``.
    """
    m = 0 if metric in ("cost", 0) else int(metric)
    if not 0 <= m <= inst.resources:
        raise IndexError(f"metric {metric!r} out of range")
    if direction not in ("from_source", "into_sink"):
        raise ValueError("direction must be 'from_source' or 'into_sink'")
    return _graph.shortest_tree(inst, m, reverse=direction == "into_sink")


@dataclass
class PreprocessOutcome:
    status: str  # "INFEASIBLE" | "OPTIMAL" | "BOUNDS"
    lower: object = None
    upper: object = None
    path: Path | None = None
    instance: Instance | None = None
    arc_map: tuple = ()
    removed_nodes: list = field(default_factory=list)
    removed_arcs: list = field(default_factory=list)
    iterations: int = 0
    log: list = field(default_factory=list)


def initial_upper_bound(inst: Instance):
    """A cost no simple path reaches: (largest arc cost) * (n - 1) + 1.

    The largest cost is floored at zero, otherwise all-negative instances
    would get a bound below some path costs.
    """
    cmax = max((a.cost for a in inst.arcs), default=0)
    return max(cmax, 0) * (inst.n - 1) + 1


def pretraitement(inst: Instance, strict_mode: bool = False) -> PreprocessOutcome:
    """Bound the optimum and prune a sink-budget instance.

    Each round computes shortest-path trees from the source and into the sink
    for cost and every resource.  The cheapest path gives a lower bound (or
    is optimal when it fits the budget); resource-cheapest paths and
    prefix + arc + suffix recombinations of stored paths give feasible upper
    bounds.  Nodes and arcs are then deleted when some resource cannot fit
    through them, or when their cheapest s-t route through them costs at
    least the upper bound (strictly more when ``strict_mode``, which keeps
    every feasible path cheaper than the bound for column generation).
    Rounds repeat while anything was deleted.
    """
    if inst.mode is not Mode.FINAL:
        raise ValueError("pretraitement expects a sink-budget (final mode) instance")
    order = inst.topological_order
    if order is None and any(a.cost < 0 for a in inst.arcs):
        raise ValueError("negative arc costs are only supported on acyclic graphs")

    n, R, s, t = inst.n, inst.resources, inst.source, inst.sink
    arcs = inst.arcs
    budget = inst.budget
    node_alive = [False] + [True] * n
    arc_alive = [True] * inst.m
    L = 0
    U = initial_upper_bound(inst)
    witness = None
    log = []

    def fits(T):
        return all(x <= b for x, b in zip(T, budget))

    def removed():
        rn = [i for i in range(1, n + 1) if not node_alive[i]]
        ra = [k for k in range(inst.m) if not arc_alive[k]]
        return rn, ra

    def finish(status, path=None, lower=None, upper=None, rounds=0):
        sub, arc_map = _subinstance(inst, arc_alive)
        rn, ra = removed()
        return PreprocessOutcome(status, lower, upper, path, sub, arc_map, rn, ra, rounds, log)

    def optimal(p, rounds):
        return finish("OPTIMAL", p, p.cost, p.cost, rounds)

    def cut(value, bound):
        return value > bound if strict_mode else value >= bound

    rounds = 0
    while True:
        rounds += 1
        fwd = [_graph.shortest_tree(inst, q, False, arc_alive, order) for q in range(R + 1)]
        bwd = [_graph.shortest_tree(inst, q, True, arc_alive, order) for q in range(R + 1)]
        entry = {"round": rounds}
        log.append(entry)

        if fwd[0].dist[t] == math.inf:
            # everything cheaper than the witness was pruned away
            if witness is not None:
                return optimal(witness, rounds)
            return finish("INFEASIBLE", rounds=rounds)
        best = make_path(inst, fwd[0].arcs_to(t))
        if fits(best.consumption):
            if witness is not None and witness.cost <= best.cost:
                return optimal(witness, rounds)
            return optimal(best, rounds)
        L = best.cost
        entry["L"] = L

        if any(fwd[r].dist[t] > budget[r - 1] for r in range(1, R + 1)):
            if witness is not None:
                return optimal(witness, rounds)
            return finish("INFEASIBLE", rounds=rounds)
        for r in range(1, R + 1):
            p = make_path(inst, fwd[r].arcs_to(t))
            if fits(p.consumption) and p.cost < U:
                U, witness = p.cost, p

        prefixes = [None] * (n + 1)
        suffixes = [None] * (n + 1)
        for i in range(1, n + 1):
            if node_alive[i]:
                prefixes[i] = _unique(tree.arcs_to(i) for tree in fwd)
                suffixes[i] = _unique(tree.arcs_to(i) for tree in bwd)
        for k, a in enumerate(arcs):
            if not arc_alive[k]:
                continue
            for pre in prefixes[a.tail] or ():
                for suf in suffixes[a.head] or ():
                    seq = pre + (k,) + suf
                    if not _simple(arcs, seq, s):
                        continue
                    p = make_path(inst, seq)
                    if fits(p.consumption) and p.cost < U:
                        U, witness = p.cost, p
        entry["U"] = U

        chg = False
        dropped_nodes, dropped_arcs = [], []
        for i in range(1, n + 1):
            if not node_alive[i] or i in (s, t):
                continue
            if any(fwd[r].dist[i] + bwd[r].dist[i] > budget[r - 1] for r in range(1, R + 1)) \
                    or cut(fwd[0].dist[i] + bwd[0].dist[i], U):
                node_alive[i] = False
                dropped_nodes.append(i)
                chg = True
                for k in inst.in_arcs[i] + inst.out_arcs[i]:
                    arc_alive[k] = False
        for k, a in enumerate(arcs):
            if not arc_alive[k]:
                continue
            i, j = a.tail, a.head
            if any(
                fwd[r].dist[i] + a.consumption[r - 1] + bwd[r].dist[j] > budget[r - 1]
                for r in range(1, R + 1)
            ) or cut(fwd[0].dist[i] + a.cost + bwd[0].dist[j], U):
                arc_alive[k] = False
                dropped_arcs.append(k)
                chg = True
        entry["dropped_nodes"] = dropped_nodes
        entry["dropped_arcs"] = dropped_arcs
        if not chg:
            break

    return finish("BOUNDS", witness, L, U, rounds)


def _unique(seqs):
    out = []
    for q in seqs:
        if q is None:
            continue
        q = tuple(q)
        if q not in out:
            out.append(q)
    return out


def _simple(arcs, seq, start):
    seen = {start}
    for k in seq:
        h = arcs[k].head
        if h in seen:
            return False
        seen.add(h)
    return True
