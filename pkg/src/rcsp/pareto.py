"""Approximate Pareto frontiers for multicriteria shortest paths on DAGs.

Every arc carries ``R`` strictly positive rational values, each criterion
being either minimized or maximized.  The value space is cut into a
geometric grid; at every grid corner an approximate test on a rounded
instance either returns a path meeting the corner or certifies that no path
beats the corner by the error factor.  The union of returned paths covers
every s-t path within a factor ``1 + eps`` (maximized criteria) or
``1 - eps`` (minimized criteria).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .core import Instance, PathOverflowError, as_number, topological_order

MIN, MAX = "min", "max"


@dataclass(frozen=True)
class MArc:
    tail: int
    head: int
    values: tuple


class MultiInstance:
    """Graph with a value vector per arc and a direction per criterion."""

    def __init__(self, n, arcs, source, sink, directions):
        self.n = n
        self.arcs = tuple(
            a if isinstance(a, MArc) else MArc(a[0], a[1], tuple(as_number(v) for v in a[2]))
            for a in arcs
        )
        self.source = source
        self.sink = sink
        self.directions = tuple(directions)
        if any(d not in (MIN, MAX) for d in self.directions):
            raise ValueError("directions must be 'min' or 'max'")
        R = len(self.directions)
        for k, a in enumerate(self.arcs):
            if len(a.values) != R:
                raise ValueError(f"arc {k}: expected {R} values")
            if not (1 <= a.tail <= n and 1 <= a.head <= n):
                raise ValueError(f"arc {k}: dangling node id")
        out = [[] for _ in range(n + 1)]
        inc = [[] for _ in range(n + 1)]
        for k, a in enumerate(self.arcs):
            out[a.tail].append(k)
            inc[a.head].append(k)
        self.out_arcs = tuple(tuple(x) for x in out)
        self.in_arcs = tuple(tuple(x) for x in inc)
        self.topological_order = topological_order(self)

    @property
    def R(self):
        return len(self.directions)

    @property
    def m(self):
        return len(self.arcs)

    @classmethod
    def from_rcsp(cls, inst: Instance, directions=None):
        """Criteria ``(cost, T^1, ..., T^R)``, all minimized unless told otherwise."""
        arcs = [MArc(a.tail, a.head, (a.cost,) + a.consumption) for a in inst.arcs]
        if directions is None:
            directions = (MIN,) * (inst.resources + 1)
        return cls(inst.n, arcs, inst.source, inst.sink, directions)

    def check(self):
        if self.topological_order is None:
            raise ValueError("needs an acyclic graph")
        for k, a in enumerate(self.arcs):
            if any(v <= 0 for v in a.values):
                raise ValueError(f"arc {k}: criterion values must be strictly positive")

    def paths(self, cap=10_000) -> list:
        """All s-t paths as :class:`MPath`, by depth-first search."""
        found = []
        stack = []
        R = self.R

        def dfs(i, vals):
            if i == self.sink:
                if len(found) >= cap:
                    raise PathOverflowError(f"more than {cap} s-t paths")
                found.append(self._mpath(tuple(stack), vals))
                return
            for k in self.out_arcs[i]:
                a = self.arcs[k]
                stack.append(k)
                dfs(a.head, tuple(x + y for x, y in zip(vals, a.values)))
                stack.pop()

        dfs(self.source, (0,) * R)
        return found

    def _mpath(self, arcs, vals=None):
        nodes = [self.source]
        for k in arcs:
            nodes.append(self.arcs[k].head)
        if vals is None:
            vals = [0] * self.R
            for k in arcs:
                vals = [x + y for x, y in zip(vals, self.arcs[k].values)]
        return MPath(tuple(arcs), tuple(nodes), tuple(as_number(v) for v in vals))

    def path(self, arcs):
        return self._mpath(tuple(arcs))


@dataclass(frozen=True)
class MPath:
    arcs: tuple
    nodes: tuple
    values: tuple


# -- bounds and grid -------------------------------------------------------


@dataclass
class CriterionSpec:
    directions: tuple
    cmin: tuple
    cmaj: tuple

    @property
    def MAJ(self):
        return max(Fraction(b) / Fraction(a) for a, b in zip(self.cmin, self.cmaj))


def criterion_bounds(minst: MultiInstance) -> CriterionSpec:
    """Per criterion, the smallest and largest s-t path value (DAG sweeps)."""
    minst.check()
    order = minst.topological_order
    R = minst.R
    lo = [None] * (minst.n + 1)
    hi = [None] * (minst.n + 1)
    lo[minst.source] = [0] * R
    hi[minst.source] = [0] * R
    for i in order:
        if lo[i] is None or i == minst.sink:
            continue
        for k in minst.out_arcs[i]:
            a = minst.arcs[k]
            j = a.head
            x = [p + q for p, q in zip(lo[i], a.values)]
            y = [p + q for p, q in zip(hi[i], a.values)]
            if lo[j] is None:
                lo[j], hi[j] = x, y
            else:
                lo[j] = [min(p, q) for p, q in zip(lo[j], x)]
                hi[j] = [max(p, q) for p, q in zip(hi[j], y)]
    if lo[minst.sink] is None:
        raise ValueError("no s-t path")
    return CriterionSpec(minst.directions, tuple(lo[minst.sink]), tuple(hi[minst.sink]))


@dataclass
class ValueGrid:
    directions: tuple
    levels: list  # per criterion: [c_0, ..., c_H]
    eps_M: Fraction
    eps_m: Fraction

    @property
    def H(self):
        return [len(lv) - 1 for lv in self.levels]

    def step(self, r):
        return 1 + self.eps_M if self.directions[r] == MAX else 1 - self.eps_m

    def level(self, r, i):
        """Level ``i`` of criterion ``r``; ``i = -1`` is one step before ``c_0``."""
        if i >= 0:
            return self.levels[r][i]
        return self.levels[r][0] / self.step(r)

    @property
    def corner_count(self):
        return math.prod(h + 1 for h in self.H)


def quadrillage(spec: CriterionSpec, eps_M, eps_m) -> ValueGrid:
    """Geometric levels per criterion: up from ``C_min`` (max) or down from ``C_maj`` (min).

    The level count is the smallest ``H`` whose last level reaches the
    other end of the range, found by exact repeated multiplication.
    """
    eps_M, eps_m = Fraction(eps_M), Fraction(eps_m)
    if not (0 < eps_M < 1 and 0 < eps_m < 1):
        raise ValueError("errors must lie in (0, 1)")
    levels = []
    for d, a, b in zip(spec.directions, spec.cmin, spec.cmaj):
        a, b = Fraction(a), Fraction(b)
        if d == MAX:
            lv = [a]
            while lv[-1] < b:
                lv.append(lv[-1] * (1 + eps_M))
        else:
            lv = [b]
            while lv[-1] > a:
                lv.append(lv[-1] * (1 - eps_m))
        levels.append([as_number(x) for x in lv])
    return ValueGrid(tuple(spec.directions), levels, eps_M, eps_m)


def split_errors(eps, bits=10):
    """Rational ``(eps_M, eps_m)`` with ``(1+eps_M)^2 <= 1+eps`` and ``(1-eps_m)^2 >= 1-eps``.

    These are lower approximations of ``sqrt(1+eps) - 1`` and
    ``1 - sqrt(1-eps)`` on a ``2**-bits`` lattice.
    """
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    den = 2**bits
    up = Fraction(math.isqrt(math.floor((1 + eps) * den * den)), den)
    r = math.isqrt(math.ceil((1 - eps) * den * den))
    if r * r < (1 - eps) * den * den:
        r += 1
    down = Fraction(r, den)
    eps_M, eps_m = up - 1, 1 - down
    if eps_M <= 0 or eps_m <= 0:
        raise ValueError("eps too small for the rational approximation")
    return eps_M, eps_m


# -- exact bounded DP ----------------------------------------------------


def _better(directions):
    """Direction-aware dominance on value tuples."""
    signs = [1 if d == MIN else -1 for d in directions]

    def dom(x, y):
        strict = False
        for s, p, q in zip(signs, x, y):
            p, q = s * p, s * q
            if p > q:
                return False
            if p < q:
                strict = True
        return strict

    return dom


def _filter(cands, dom):
    out = []
    for i, (v, _) in enumerate(cands):
        if not any(dom(w, v) for j, (w, _) in enumerate(cands) if j != i):
            out.append(cands[i])
    return out


def _acyclic_core(minst, arc_values, B, dom):
    """Nondominated sink labels meeting ``B``; labels are ``(values, parent_chain)``."""
    directions = minst.directions
    R = len(directions)
    mins = [r for r in range(R) if directions[r] == MIN]
    maxs = [r for r in range(R) if directions[r] == MAX]
    s, t = minst.source, minst.sink
    labels = {s: [((0,) * R, None)]}
    started = False
    for j in minst.topological_order:
        if j == s:
            started = True
            continue
        if not started:
            continue
        cands = {}
        for k in minst.in_arcs[j]:
            i = minst.arcs[k].tail
            if i == t:
                continue
            av = arc_values[k]
            for vals, chain in labels.get(i, ()):
                nv = tuple(x + y for x, y in zip(vals, av))
                if any(nv[r] > B[r] for r in mins):
                    continue
                if j == t and any(nv[r] < B[r] for r in maxs):
                    continue
                if nv not in cands:
                    cands[nv] = (k, chain)
        if cands:
            labels[j] = _filter(list(cands.items()), dom)
    return labels.get(t, [])


def _chain_arcs(chain):
    seq = []
    while chain is not None:
        k, chain = chain
        seq.append(k)
    seq.reverse()
    return seq


def acyclic_m(minst: MultiInstance, B, directions=None) -> list:
    """Nondominated s-t paths with MIN values <= ``B`` and MAX values >= ``B``.

    Intermediate labels are pruned on minimized criteria only; maximized
    criteria are checked at the sink.  Returns :class:`MPath` objects, one
    per distinct value vector.
    """
    if directions is not None and tuple(directions) != minst.directions:
        minst = MultiInstance(minst.n, minst.arcs, minst.source, minst.sink, directions)
    if minst.topological_order is None:
        raise ValueError("needs an acyclic graph")
    B = tuple(as_number(b) for b in B)
    dom = _better(minst.directions)
    found = _acyclic_core(minst, [a.values for a in minst.arcs], B, dom)
    return [minst.path(_chain_arcs(ch)) for _, ch in found]


# -- rounding and approximate test ----------------------------------------


@dataclass
class ScaledMulti:
    values: list  # per arc: tuple of rounded values
    cap_M: int
    cap_m: int


def _caps(n, eps_M, eps_m):
    return math.ceil(Fraction(n) / eps_M), math.floor(Fraction(n) / eps_m)


def _scale_one(c, n, eps, B, direction, cap):
    x = Fraction(c) * n / (eps * Fraction(B))
    if direction == MAX:
        return min(math.floor(x), cap)
    # any value above the cap fails the test the same way; clamping at the
    # cap itself would let a single over-budget arc pass
    return min(math.ceil(x), cap + 1)


def scale_m(minst: MultiInstance, B, eps_M, eps_m) -> ScaledMulti:
    """Round every value relative to its corner coordinate ``B^r``.

    Maximized: ``min(floor(c n / (eps_M B)), ceil(n / eps_M))``.
    Minimized: ``ceil(c n / (eps_m B))``, clamped at ``floor(n / eps_m) + 1``.
    """
    eps_M, eps_m = Fraction(eps_M), Fraction(eps_m)
    if not (0 < eps_M < 1 and 0 < eps_m < 1):
        raise ValueError("errors must lie in (0, 1)")
    if any(Fraction(b) <= 0 for b in B):
        raise ValueError("corner must be componentwise positive")
    n = minst.n
    cap_M, cap_m = _caps(n, eps_M, eps_m)
    vals = []
    for a in minst.arcs:
        vals.append(tuple(
            _scale_one(c, n, eps_M if d == MAX else eps_m, b, d, cap_M if d == MAX else cap_m)
            for c, b, d in zip(a.values, B, minst.directions)
        ))
    return ScaledMulti(vals, cap_M, cap_m)


@dataclass
class MTestAnswer:
    answer: str  # "YES" with a path meeting B, or "NO"
    path: MPath | None = None


def _scaled_bound(minst, cap_M, cap_m):
    return tuple(cap_M if d == MAX else cap_m for d in minst.directions)


def test_m(minst: MultiInstance, B, eps_M, eps_m) -> MTestAnswer:
    """YES with a path meeting ``B``, or NO: every path misses some criterion by the error.

    NO means each path has a maximized value below ``(1+eps_M) B^r`` or a
    minimized value above ``(1-eps_m) B^r``.
    """
    minst.check()
    sc = scale_m(minst, B, eps_M, eps_m)
    Bs = _scaled_bound(minst, sc.cap_M, sc.cap_m)
    found = _acyclic_core(minst, sc.values, Bs, _better(minst.directions))
    if not found:
        return MTestAnswer("NO")
    vals, chain = min(found, key=lambda lab: lab[0])
    return MTestAnswer("YES", minst.path(_chain_arcs(chain)))


test_m.__test__ = False  # not a pytest test


# -- frontiers -----------------------------------------------------------


@dataclass
class Frontier:
    members: list  # MPath, one per value vector
    corners_probed: int = 0
    grid: ValueGrid | None = None
    stats: dict = field(default_factory=dict)

    def values(self) -> list:
        return [p.values for p in self.members]

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def pareto_frontier_approx(minst: MultiInstance, eps) -> Frontier:
    """Approximate frontier by approximate tests at every grid corner.

    The grid uses ``eps_M ~ sqrt(1+eps) - 1`` and ``eps_m ~ 1 - sqrt(1-eps)``
    so that two grid steps stay within ``eps``.  Corner indices run from
    ``-1`` (one step before the first level) to ``H - 1``: a path lying in
    the first cell of some criterion can be missed by the test at its own
    corner, and is then caught by the corner one step back, which must exist.
    The number of corners is ``prod(H + 1)``.
    """
    minst.check()
    eps = as_number(eps)
    eps_M, eps_m = split_errors(eps)
    spec = criterion_bounds(minst)
    grid = quadrillage(spec, eps_M, eps_m)
    n = minst.n
    cap_M, cap_m = _caps(n, eps_M, eps_m)
    Bs = _scaled_bound(minst, cap_M, cap_m)
    dom = _better(minst.directions)
    R = minst.R

    # rounded arc values per criterion and level, shared by all corners
    index_ranges = [range(-1, h) for h in grid.H]
    rounded = []
    for r in range(R):
        d = minst.directions[r]
        e = eps_M if d == MAX else eps_m
        cap = cap_M if d == MAX else cap_m
        per_level = {}
        for i in index_ranges[r]:
            b = grid.level(r, i)
            per_level[i] = [_scale_one(a.values[r], n, e, b, d, cap) for a in minst.arcs]
        rounded.append(per_level)

    seen = {}
    probed = 0
    for corner in itertools.product(*index_ranges):
        probed += 1
        cols = [rounded[r][corner[r]] for r in range(R)]
        arc_values = list(zip(*cols))
        found = _acyclic_core(minst, arc_values, Bs, dom)
        if not found:
            continue
        _, chain = min(found, key=lambda lab: lab[0])
        p = minst.path(_chain_arcs(chain))
        seen.setdefault(p.values, p)
    members = [seen[v] for v in sorted(seen)]
    return Frontier(members, probed, grid, {"eps_M": eps_M, "eps_m": eps_m})


def pareto_frontier_oracle(minst: MultiInstance, eps, cap=10_000) -> Frontier:
    """Reference frontier: one enumerated path per nonempty grid cell.

    The grid uses ``eps`` itself; cells are closed boxes between
    consecutive levels.  Exponential in general, meant for small instances.
    """
    eps = as_number(eps)
    paths = minst.paths(cap)
    if not paths:
        return Frontier([], 0)
    spec = criterion_bounds(minst)
    grid = quadrillage(spec, eps, eps)
    R = minst.R
    cells = [range(max(h, 1)) for h in grid.H]

    def box(r, i):
        lv = grid.levels[r]
        a, b = lv[i], lv[min(i + 1, len(lv) - 1)]
        return (a, b) if a <= b else (b, a)

    chosen = {}
    probed = 0
    for cell in itertools.product(*cells):
        probed += 1
        bounds = [box(r, cell[r]) for r in range(R)]
        for p in paths:
            if all(lo <= v <= hi for v, (lo, hi) in zip(p.values, bounds)):
                chosen.setdefault(p.values, p)
                break
    members = [chosen[v] for v in sorted(chosen)]
    return Frontier(members, probed, grid)


def covers(rep_values, values, directions, eps, strict=True) -> bool:
    """Does a member with ``rep_values`` cover a path with ``values``?

    Maximized: ``v < (1+eps) rep``; minimized: ``v > (1-eps) rep``.  With
    ``strict=False``, equality at the boundary is accepted.
    """
    for v, p, d in zip(values, rep_values, directions):
        bound = (1 + eps) * p if d == MAX else (1 - eps) * p
        if d == MAX:
            ok = v < bound or (not strict and v == bound)
        else:
            ok = v > bound or (not strict and v == bound)
        if not ok:
            return False
    return True


@dataclass
class FeasibilityEntry:
    path: MPath
    representative: MPath
    factor: Fraction
    ok: bool


def epsilon_feasibility_report(minst: MultiInstance, frontier: Frontier, budgets, eps) -> list:
    """For each path within ``budgets``, its best frontier representative.

    Criterion 0 is the cost and criteria ``1..R`` are consumptions; the
    factor is the worst ratio of representative consumption to budget,
    expected at most ``1 / (1 - eps)``.
    """
    if any(d != MIN for d in minst.directions):
        raise ValueError("feasibility report needs all criteria minimized")
    eps = as_number(eps)
    budgets = tuple(as_number(b) for b in budgets)
    if len(budgets) != minst.R - 1:
        raise ValueError(f"expected {minst.R - 1} budgets")
    limit = 1 / (1 - Fraction(eps))
    out = []
    for p in minst.paths():
        if any(v > b for v, b in zip(p.values[1:], budgets)):
            continue
        best = None
        for q in frontier:
            if not covers(q.values, p.values, minst.directions, eps, strict=False):
                continue
            f = max((Fraction(v) / b for v, b in zip(q.values[1:], budgets)), default=Fraction(0))
            if best is None or f < best[1]:
                best = (q, f)
        if best is None:
            out.append(FeasibilityEntry(p, None, math.inf, False))
        else:
            out.append(FeasibilityEntry(p, best[0], best[1], best[1] <= limit))
    return out
