"""Exact solvers based on label dynamic programming.

A label is the value vector ``(cost, T^1, ..., T^R)`` of a source-rooted
partial path, stored at the path's last node with a parent link.  Labels
that are dominated are discarded; with a retention parameter ``k > 1`` a
label survives as long as fewer than ``k`` others dominate it.

Three propagation orders are provided:

* :func:`label_correcting` - FIFO node worklist, any graph without
  absorbing cycles;
* :func:`label_setting` - always extends the lexicographically smallest
  untreated label; needs nonnegative costs;
* :func:`acyclic_labeling` - one sweep in topological order.

All three return the same sink frontier for ``k = 1``.

Lower window bounds are enforced on extension: with waiting the consumption
is lifted to the bound, without waiting an early label is dropped.  Because
an early arrival can be fatal without waiting, a label with smaller
consumption is not automatically better at intermediate nodes.  For each
resource where some lower bound can reject an arrival, dominance there
requires equal consumption on that resource.  Sink labels are never
extended, so plain dominance applies at the sink.
"""
from __future__ import annotations

import heapq
import itertools
from collections import deque
from dataclasses import dataclass, field

from .core import Instance, Path, Wait, initial_consumption, make_path


class Label:
    __slots__ = ("node", "values", "parent", "arc", "treated", "alive")

    def __init__(self, node, values, parent=None, arc=None):
        self.node = node
        self.values = values
        self.parent = parent
        self.arc = arc
        self.treated = False
        self.alive = True

    @property
    def cost(self):
        return self.values[0]

    def arcs(self) -> list:
        seq = []
        lab = self
        while lab.parent is not None:
            seq.append(lab.arc)
            lab = lab.parent
        seq.reverse()
        return seq

    def path(self, inst: Instance) -> Path:
        return make_path(inst, self.arcs())

    def __repr__(self):
        return f"Label(node={self.node}, values={self.values})"


def _vec(x):
    return x.values if isinstance(x, Label) else tuple(x)


def dominates(e, e2) -> bool:
    """True iff ``e`` is componentwise <= ``e2`` and strictly smaller somewhere."""
    e, e2 = _vec(e), _vec(e2)
    if len(e) != len(e2):
        raise ValueError("labels of different dimension")
    strict = False
    for x, y in zip(e, e2):
        if x > y:
            return False
        if x < y:
            strict = True
    return strict


def _dominates_eq(e, e2, exact):
    """Dominance that also demands equality on the coordinates in ``exact``."""
    strict = False
    for x, y in zip(e, e2):
        if x > y:
            return False
        if x < y:
            strict = True
    if not strict:
        return False
    return all(e[r] == e2[r] for r in exact)


def pareto_filter(labels, k: int = 1, dominance=dominates) -> list:
    """Keep the labels dominated by fewer than ``k`` others, in input order."""
    if k < 1:
        raise ValueError("k must be at least 1")
    labels = list(labels)
    vecs = [_vec(x) for x in labels]
    out = []
    for i, v in enumerate(vecs):
        count = 0
        for j, w in enumerate(vecs):
            if i != j and dominance(w, v):
                count += 1
                if count >= k:
                    break
        if count < k:
            out.append(labels[i])
    return out


class ParetoSet:
    """Labels at one node, none dominated by ``k`` or more of the others.

    Equal vectors are stored once.  ``insert`` is incremental, so the set
    depends on arrival order only for ``k > 1``; with ``k = 1`` it is the
    exact nondominated set of everything inserted.
    """

    def __init__(self, k: int = 1, exact=()):
        if k < 1:
            raise ValueError("k must be at least 1")
        self.k = k
        self.exact = tuple(exact)
        self.labels = []
        self._hits = []  # dominator counts, parallel to labels

    def _dom(self, a, b):
        if self.exact:
            return _dominates_eq(a, b, self.exact)
        return dominates(a, b)

    def insert(self, label) -> bool:
        v = _vec(label)
        hits = 0
        for lab in self.labels:
            w = lab.values
            if w == v:
                return False
            if self._dom(w, v):
                hits += 1
                if hits >= self.k:
                    return False
        keep, keep_hits = [], []
        for lab, h in zip(self.labels, self._hits):
            if self._dom(v, lab.values):
                h += 1
            if h >= self.k:
                lab.alive = False
            else:
                keep.append(lab)
                keep_hits.append(h)
        keep.append(label)
        keep_hits.append(hits)
        self.labels, self._hits = keep, keep_hits
        return True

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return len(self.labels)

    def values(self) -> set:
        return {lab.values for lab in self.labels}

    def best(self):
        """The cheapest label, ties broken lexicographically; ``None`` if empty."""
        return min(self.labels, key=lambda lab: lab.values, default=None)


@dataclass
class SinkFrontier:
    """Labels reaching the sink, with a helper to rebuild their paths."""

    instance: Instance
    labels: list
    k: int = 1
    stats: dict = field(default_factory=dict)

    def values(self) -> set:
        return {lab.values for lab in self.labels}

    def paths(self) -> list:
        return [lab.path(self.instance) for lab in self.labels]

    def best(self):
        return min(self.labels, key=lambda lab: lab.values, default=None)

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)


class _Extender:
    """Shared extension and feasibility logic for one instance."""

    def __init__(self, inst: Instance, k: int):
        if k < 1:
            raise ValueError("k must be at least 1")
        self.inst = inst
        self.k = k
        self.wait = inst.wait is Wait.WAIT
        self.windows = inst.windows
        self.exact = tuple(r + 1 for r, b in enumerate(inst.binding_lower) if b)

    def new_set(self, node):
        if node == self.inst.sink:
            return ParetoSet(self.k)
        return ParetoSet(self.k, self.exact)

    def root(self):
        inst = self.inst
        T = initial_consumption(inst)
        lo, hi = self.windows[inst.source]
        if any(x < a or x > b for x, a, b in zip(T, lo, hi)):
            return None
        return Label(inst.source, (0,) + T)

    def extend(self, lab, k):
        a = self.inst.arcs[k]
        lo, hi = self.windows[a.head]
        vals = lab.values
        out = [vals[0] + a.cost]
        for r, t in enumerate(a.consumption):
            x = vals[r + 1] + t
            if x < lo[r]:
                if not self.wait:
                    return None
                x = lo[r]
            if x > hi[r]:
                return None
            out.append(x)
        return Label(a.head, tuple(out), lab, k)


def label_correcting(inst: Instance, k: int = 1) -> SinkFrontier:
    """Label correcting with a FIFO worklist of nodes.

    Terminates on every valid instance: absorbing cycles are rejected at
    load, a cycle with positive consumption is cut off by the finite windows,
    and a zero-consumption cycle of nonnegative cost yields a dominated or
    duplicate label.  On cyclic graphs the returned paths may repeat nodes.
    """
    ext = _Extender(inst, k)
    sets = [None] + [ext.new_set(i) for i in range(1, inst.n + 1)]
    root = ext.root()
    if root is None:
        return SinkFrontier(inst, [], k)
    sets[inst.source].insert(root)
    queue = deque([inst.source])
    queued = [False] * (inst.n + 1)
    queued[inst.source] = True
    sink = inst.sink
    out = inst.out_arcs
    extensions = 0
    while queue:
        i = queue.popleft()
        queued[i] = False
        pending = [lab for lab in sets[i] if not lab.treated]
        for lab in pending:
            if not lab.alive:
                continue
            lab.treated = True
            if i == sink:
                continue
            for a in out[i]:
                new = ext.extend(lab, a)
                if new is None:
                    continue
                extensions += 1
                j = new.node
                if sets[j].insert(new) and not queued[j] and j != sink:
                    queue.append(j)
                    queued[j] = True
    return SinkFrontier(inst, list(sets[sink]), k, {"extensions": extensions})


def label_setting(inst: Instance, k: int = 1) -> SinkFrontier:
    """Label setting: always extend the lexicographically smallest open label.

    Ties in the lexicographic order go to the earlier created label.
    """
    if any(a.cost < 0 for a in inst.arcs):
        raise ValueError("label_setting needs nonnegative arc costs; use label_correcting")
    ext = _Extender(inst, k)
    sets = [None] + [ext.new_set(i) for i in range(1, inst.n + 1)]
    root = ext.root()
    if root is None:
        return SinkFrontier(inst, [], k)
    sets[inst.source].insert(root)
    tie = itertools.count()
    heap = [(root.values, next(tie), root)]
    sink = inst.sink
    out = inst.out_arcs
    extensions = 0
    while heap:
        _, _, lab = heapq.heappop(heap)
        if not lab.alive or lab.treated:
            continue
        lab.treated = True
        if lab.node == sink:
            continue
        for a in out[lab.node]:
            new = ext.extend(lab, a)
            if new is None:
                continue
            extensions += 1
            if sets[new.node].insert(new) and new.node != sink:
                heapq.heappush(heap, (new.values, next(tie), new))
    return SinkFrontier(inst, list(sets[sink]), k, {"extensions": extensions})


def acyclic_labeling(inst: Instance, k: int = 1) -> SinkFrontier:
    """One pass in topological order; each node's candidates are filtered once."""
    order = inst.topological_order
    if order is None:
        raise ValueError("acyclic_labeling needs an acyclic graph")
    ext = _Extender(inst, k)
    labels = [[] for _ in range(inst.n + 1)]
    root = ext.root()
    if root is None:
        return SinkFrontier(inst, [], k)
    labels[inst.source] = [root]
    sink = inst.sink
    extensions = 0
    started = False
    for j in order:
        if j == inst.source:
            started = True
            continue
        if not started:
            continue
        cands = []
        seen = set()
        for a in inst.in_arcs[j]:
            i = inst.arcs[a].tail
            if i == sink:
                continue
            for lab in labels[i]:
                new = ext.extend(lab, a)
                if new is None or new.values in seen:
                    continue
                extensions += 1
                seen.add(new.values)
                cands.append(new)
        if j == sink:
            labels[j] = pareto_filter(cands, k)
        else:
            exact = ext.exact
            dom = (lambda a, b: _dominates_eq(a, b, exact)) if exact else dominates
            labels[j] = pareto_filter(cands, k, dom)
    return SinkFrontier(inst, labels[sink], k, {"extensions": extensions})


ALGORITHMS = {
    "correction": label_correcting,
    "fixation": label_setting,
    "acyclic": acyclic_labeling,
}


@dataclass
class Solution:
    status: str  # "OPTIMAL" | "INFEASIBLE"
    path: Path | None = None
    cost: object = None
    frontier: SinkFrontier | None = None


def solve_exact(inst: Instance, algo: str = "correction", k: int = 1) -> Solution:
    """Cheapest feasible s-t path via the chosen labeling algorithm."""
    try:
        run = ALGORITHMS[algo]
    except KeyError:
        raise ValueError(f"unknown algorithm {algo!r}; choose from {sorted(ALGORITHMS)}") from None
    front = run(inst, k)
    best = front.best()
    if best is None:
        return Solution("INFEASIBLE", frontier=front)
    return Solution("OPTIMAL", best.path(inst), best.cost, front)
