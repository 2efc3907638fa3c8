"""Single-source / single-sink shortest path trees used by preprocessing and bounds.

Metric 0 is arc cost, metric ``r >= 1`` is consumption of resource ``r``.
Acyclic graphs use a topological sweep (any sign allowed); cyclic graphs use
Dijkstra and require a nonnegative metric.
"""
from __future__ import annotations

import heapq
import itertools
import math


def arc_weight(arc, metric):
    return arc.cost if metric == 0 else arc.consumption[metric - 1]


class Tree:
    """Distances plus one parent arc per node (``None`` at the root/unreached)."""

    __slots__ = ("root", "reverse", "dist", "parent")

    def __init__(self, root, reverse, dist, parent):
        self.root = root
        self.reverse = reverse
        self.dist = dist
        self.parent = parent

    def arcs_to(self, i):
        """Arc indices of the stored path between the root and ``i``.

        For a forward tree this is root -> i, for a reverse tree i -> root,
        always listed in travel order.  ``None`` if unreachable.
        """
        if self.dist[i] == math.inf:
            return None
        seq = []
        while self.parent[i] is not None:
            k, prev = self.parent[i]
            seq.append(k)
            i = prev
        if not self.reverse:
            seq.reverse()
        return seq


def shortest_tree(inst, metric, reverse=False, alive=None, order=None):
    """Shortest distances from the source (or to the sink when ``reverse``).

    ``alive`` is an optional boolean mask over arcs.  Ties keep the first
    strict improvement in arc order, which makes stored paths deterministic.
    """
    n = inst.n
    arcs = inst.arcs
    if alive is None:
        alive = [True] * len(arcs)
    root = inst.sink if reverse else inst.source
    dist = [math.inf] * (n + 1)
    parent = [None] * (n + 1)
    dist[root] = 0
    if order is None:
        order = inst.topological_order
    # edges seen from the relaxing node: (arc index, other endpoint)
    adj = inst.in_arcs if reverse else inst.out_arcs

    def ends(k):
        a = arcs[k]
        return (a.head, a.tail) if reverse else (a.tail, a.head)

    if order is not None:
        seq = reversed(order) if reverse else order
        for i in seq:
            if dist[i] == math.inf:
                continue
            for k in adj[i]:
                if not alive[k]:
                    continue
                _, j = ends(k)
                d = dist[i] + arc_weight(arcs[k], metric)
                if d < dist[j]:
                    dist[j] = d
                    parent[j] = (k, i)
        return Tree(root, reverse, dist, parent)

    if any(alive[k] and arc_weight(a, metric) < 0 for k, a in enumerate(arcs)):
        raise ValueError("negative metric on a cyclic graph")
    tie = itertools.count()
    heap = [(0, next(tie), root)]
    done = [False] * (n + 1)
    while heap:
        d, _, i = heapq.heappop(heap)
        if done[i] or d > dist[i]:
            continue
        done[i] = True
        for k in adj[i]:
            if not alive[k]:
                continue
            _, j = ends(k)
            nd = d + arc_weight(arcs[k], metric)
            if nd < dist[j]:
                dist[j] = nd
                parent[j] = (k, i)
                heapq.heappush(heap, (nd, next(tie), j))
    return Tree(root, reverse, dist, parent)
