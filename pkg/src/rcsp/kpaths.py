"""Ranked enumeration of s-t paths by cost on acyclic graphs.

Prefixes are expanded best first, keyed by prefix cost plus the exact
cheapest completion to the sink.  The key of a prefix is then the cost of
its best completion, so complete paths come out in nondecreasing cost, and
equal costs come out in lexicographic node order.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from . import _graph
from .core import Instance, Path, is_feasible, make_path


class RankedPathStream:
    """Iterator over s-t paths in nondecreasing cost order."""

    def __init__(self, inst: Instance):
        if inst.topological_order is None:
            raise ValueError("ranked enumeration needs an acyclic graph")
        self.inst = inst
        self.emitted = 0
        self._to_sink = _graph.shortest_tree(inst, 0, reverse=True).dist
        self._heap = []
        s = inst.source
        if self._to_sink[s] != math.inf:
            self._heap.append((self._to_sink[s], (s,), (), 0))

    def __iter__(self):
        return self

    def __next__(self) -> Path:
        inst = self.inst
        dist = self._to_sink
        heap = self._heap
        while heap:
            key, nodes, arcs, cost = heapq.heappop(heap)
            i = nodes[-1]
            if i == inst.sink:
                self.emitted += 1
                return make_path(inst, arcs)
            for k in inst.out_arcs[i]:
                a = inst.arcs[k]
                d = dist[a.head]
                if d == math.inf:
                    continue
                c = cost + a.cost
                heapq.heappush(heap, (c + d, nodes + (a.head,), arcs + (k,), c))
        raise StopIteration


def k_shortest(inst: Instance, k: int) -> list:
    """The ``k`` cheapest s-t paths (fewer if the graph has fewer)."""
    if k < 1:
        raise ValueError("k must be positive")
    out = []
    for p in RankedPathStream(inst):
        out.append(p)
        if len(out) == k:
            break
    return out


@dataclass
class RankResult:
    status: str  # "FOUND" | "NOT_FOUND"
    path: Path | None = None
    rank: int | None = None
    scanned: int = 0


def first_feasible_by_rank(inst: Instance, k_max: int) -> RankResult:
    """Pop ranked paths until one satisfies every window; give up after ``k_max``.

    The first feasible path met is a cheapest feasible path.
    """
    if k_max < 1:
        raise ValueError("k_max must be positive")
    stream = RankedPathStream(inst)
    for rank, p in enumerate(stream, start=1):
        if is_feasible(inst, p):
            return RankResult("FOUND", p, rank, rank)
        if rank >= k_max:
            return RankResult("NOT_FOUND", scanned=rank)
    return RankResult("NOT_FOUND", scanned=stream.emitted)
