"""(1 + eps)-approximation for one sink-budget resource on a DAG.

The pipeline: bracket the optimum between ``LB`` and ``UB <= n * LB`` by a
binary search over cost-sorted arc prefixes, narrow the bracket to
``UB <= rho * LB`` with approximate tests on rounded instances, then solve
one rounded instance exactly with a cost-indexed dynamic program.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import _graph
from .core import Instance, Mode, Path, as_number, make_path
from .preprocess import initial_upper_bound


class FptasInputError(ValueError):
    pass


def _check(inst: Instance, positive_costs=True):
    if inst.mode is not Mode.FINAL:
        raise FptasInputError("needs a sink-budget (final mode) instance")
    if inst.resources != 1:
        raise FptasInputError("needs exactly one resource")
    if inst.topological_order is None:
        raise FptasInputError("needs an acyclic graph")
    if positive_costs:
        for k, a in enumerate(inst.arcs):
            if not isinstance(a.cost, int) or a.cost <= 0:
                raise FptasInputError(f"arc {k}: cost must be a positive integer, got {a.cost}")


def _cost_dp(inst: Instance, costs, horizon):
    """Smallest level ``c <= horizon`` where the sink fits the budget.

    ``costs[k]`` is the (integer) cost of arc ``k`` or ``None`` for a dropped
    arc.  ``g[c][j]`` is the least consumption of a source-to-``j`` path of
    cost at most ``c``.  Nodes are swept in topological order inside each
    level so zero-cost arcs are handled too.  Returns ``(c, arc list)`` or
    ``None``.
    """
    order = inst.topological_order
    s, t = inst.source, inst.sink
    budget = inst.budget[0]
    arcs = inst.arcs
    inf = math.inf
    n = inst.n
    incoming = [
        [(k, arcs[k].tail, costs[k], arcs[k].consumption[0]) for k in inst.in_arcs[j]
         if costs[k] is not None and arcs[k].tail != t]
        for j in range(n + 1)
    ]
    g = []
    par = []
    c = 0
    while c <= horizon:
        prev = g[c - 1] if c else None
        cur = list(prev) if prev else [inf] * (n + 1)
        pc = [None] * (n + 1)
        cur[s] = 0
        g.append(cur)
        par.append(pc)
        for j in order:
            if j == s:
                continue
            best = cur[j]
            for k, i, ck, tk in incoming[j]:
                if ck > c:
                    continue
                v = g[c - ck][i] + tk
                if v < best:
                    best = v
                    pc[j] = (k, i, c - ck)
            cur[j] = best
        if cur[t] <= budget:
            return c, _rebuild(par, s, t, c)
        c += 1
    return None


def _rebuild(par, s, t, c):
    seq = []
    j = t
    while j != s:
        while par[c][j] is None:
            c -= 1
        k, j, c = par[c][j]
        seq.append(k)
    seq.reverse()
    return seq


@dataclass
class DPResult:
    status: str  # "OPTIMAL" | "INFEASIBLE"
    cost: object = None
    path: Path | None = None


def exact_cost_dp(inst: Instance, cap=None) -> DPResult:
    """Exact optimum by increasing the cost level until the sink fits.

    ``cap`` bounds the levels tried (default: the largest arc cost times
    ``n - 1``, plus one, which no simple path reaches).
    """
    _check(inst)
    if cap is None:
        cap = initial_upper_bound(inst)
    found = _cost_dp(inst, [a.cost for a in inst.arcs], cap)
    if found is None:
        return DPResult("INFEASIBLE")
    c, seq = found
    p = make_path(inst, seq)
    return DPResult("OPTIMAL", p.cost, p)


@dataclass
class ScaledInstance:
    original: Instance
    costs: list  # per arc: rounded cost, or None when dropped
    dropped: list
    bound: object
    delta: object

    def scaled_cost(self, p: Path):
        return sum(self.costs[k] for k in p.arcs)


def _floor(q) -> int:
    return math.floor(Fraction(q))


def scale(inst: Instance, B, delta, keep_up_to=None) -> ScaledInstance:
    """Round costs to ``floor(c (n-1) / (delta B))``; drop arcs costlier than ``B``.

    ``keep_up_to`` overrides the drop threshold (the final solve step keeps
    every arc an optimal path may use).
    """
    B, delta = as_number(B), as_number(delta)
    n = inst.n
    if not 0 < delta <= n:
        raise ValueError(f"delta must lie in (0, {n}], got {delta}")
    if B <= 0:
        raise ValueError("B must be positive")
    limit = B if keep_up_to is None else as_number(keep_up_to)
    factor = Fraction(n - 1) / (Fraction(delta) * B)
    costs, dropped = [], []
    for k, a in enumerate(inst.arcs):
        if a.cost > limit:
            costs.append(None)
            dropped.append(k)
        else:
            costs.append(_floor(a.cost * factor))
    return ScaledInstance(inst, costs, dropped, B, delta)


@dataclass
class TestAnswer:
    answer: str  # "YES": optimum >= B certified; "NO": path below (1+delta)B
    path: Path | None = None

    def __bool__(self):
        return self.answer == "YES"


def approx_test(inst: Instance, B, delta) -> TestAnswer:
    """Approximate decision: YES certifies OPT >= B, NO exhibits a path < (1+delta) B."""
    _check(inst)
    sc = scale(inst, B, delta)
    horizon = _floor(Fraction(inst.n - 1) / Fraction(sc.delta))
    found = _cost_dp(inst, sc.costs, horizon)
    if found is None:
        return TestAnswer("YES")
    return TestAnswer("NO", make_path(inst, found[1]))


@dataclass
class Bounds:
    lower: object
    upper: object
    rho: object = None
    path: Path | None = None  # feasible path behind the upper bound, when known
    iterations: int = 0
    log: list = field(default_factory=list)


def bounds_lorenz_raz(inst: Instance):
    """``LB <= OPT <= UB <= n LB`` from cost-sorted arc prefixes, or ``None``.

    Binary search for the shortest prefix of the cost-sorted arc list whose
    graph (all arcs no costlier than the prefix's last) admits a path within
    budget.  Every feasible path then uses an arc of at least that cost,
    which is ``LB``; the resource-cheapest path in that graph costs ``UB``.
    ``None`` means the instance is infeasible.
    """
    _check(inst, positive_costs=False)
    budget = inst.budget[0]
    sorted_costs = sorted(a.cost for a in inst.arcs)
    order = inst.topological_order

    def probe(ell):
        cmax = sorted_costs[ell - 1]
        alive = [a.cost <= cmax for a in inst.arcs]
        tree = _graph.shortest_tree(inst, 1, alive=alive, order=order)
        if tree.dist[inst.sink] <= budget:
            return make_path(inst, tree.arcs_to(inst.sink))
        return None

    m = inst.m
    if m == 0:
        return None
    best = probe(m)
    if best is None:
        return None
    lo, hi = 0, m
    while lo < hi - 1:
        mid = (lo + hi) // 2
        p = probe(mid)
        if p is not None:
            hi, best = mid, p
        else:
            lo = mid
    return Bounds(sorted_costs[hi - 1], best.cost, path=best)


def _sqrt_floor(x, bits=16) -> Fraction:
    """Rational lower approximation of sqrt(x) with ``bits`` binary digits."""
    x = Fraction(x)
    scale_ = 4**bits
    return Fraction(math.isqrt(math.floor(x * scale_)), 2**bits)


def tower_index(ratio) -> int:
    """First ``i`` with ``2**(2**i) > ratio``."""
    i = 0
    while 2 ** (2**i) <= ratio:
        i += 1
    return i


def dicho_parameters(lb, ub, n):
    """``(1 + delta, B)`` for one narrowing step of the bracket ``[lb, ub]``.

    With ``ratio = ub / lb`` and ``a_i = 2**(2**i)`` the first tower value
    above it: ``1 + delta = a_(i-2)`` and ``B = lb * a_(i-3)``.  That needs
    ``i >= 3`` (ratio at least 16); below, the square-root choice
    ``1 + delta ~ sqrt(ratio)`` and ``B ~ sqrt(lb ub / (1 + delta))`` is used
    with rational lower approximations.  ``delta`` is capped at ``n``.
    """
    ratio = Fraction(ub) / Fraction(lb)
    i = tower_index(ratio)
    if i >= 3:
        one_d = Fraction(2 ** (2 ** (i - 2)))
        B = lb * 2 ** (2 ** (i - 3))
    else:
        one_d = _sqrt_floor(ratio)
        B = lb * _sqrt_floor(ratio / one_d)
    one_d = min(one_d, Fraction(n + 1))
    return one_d, as_number(B)


def dicho_iteration_bound(n) -> int:
    """``ceil((log log n - log log 2) / log(8/7))`` loop passes for a ratio-n start."""
    if n <= 2:
        return 0
    return math.ceil((math.log(math.log(n)) - math.log(math.log(2))) / math.log(8 / 7))


def dicho(inst: Instance, bounds: Bounds, rho=2, max_iterations=200) -> Bounds:
    """Narrow ``[LB, UB]`` by approximate tests until ``UB <= rho LB``."""
    rho = as_number(rho)
    if rho <= 1:
        raise ValueError("rho must exceed 1")
    _check(inst)
    lb, ub = as_number(bounds.lower), as_number(bounds.upper)
    if lb <= 0:
        raise ValueError("lower bound must be positive")
    path = bounds.path
    log = []
    it = 0
    while ub > rho * lb:
        it += 1
        if it > max_iterations:
            raise RuntimeError("bracket narrowing did not converge")
        one_d, B = dicho_parameters(lb, ub, inst.n)
        ans = approx_test(inst, B, one_d - 1)
        if ans.answer == "YES":
            lb = B
        else:
            ub = min(ub, as_number(B * one_d))
            if path is None or ans.path.cost < path.cost:
                path = ans.path
        log.append({"B": B, "delta": one_d - 1, "answer": ans.answer, "lb": lb, "ub": ub})
    return Bounds(lb, ub, rho, path, it, log)


@dataclass
class FptasResult:
    status: str  # "APPROX" | "OPTIMAL" | "INFEASIBLE"
    path: Path | None = None
    cost: object = None
    lower: object = None
    upper: object = None
    iterations: int = 0
    eps: object = None

    @property
    def ratio_bound(self):
        return 1 + self.eps if self.eps is not None else None


def fptas_solve(inst: Instance, eps, rho=2) -> FptasResult:
    """A feasible path costing at most ``(1 + eps) OPT``.

    After bracketing, the final rounded solve uses ``B = LB`` and keeps
    every arc with cost up to ``UB`` (not only up to ``LB``): an optimal
    path may contain an arc costlier than ``LB``, and dropping it could
    lose the guarantee.  The level horizon is then ``(n-1) UB / (eps LB)``.
    When the bracket closes (``LB == UB``) the bracketing path is optimal.
    """
    eps = as_number(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    _check(inst)
    start = bounds_lorenz_raz(inst)
    if start is None:
        return FptasResult("INFEASIBLE", eps=eps)
    if start.lower == start.upper:
        p = start.path
        return FptasResult("OPTIMAL", p, p.cost, start.lower, start.upper, 0, eps)
    br = dicho(inst, start, rho)
    lb, ub = br.lower, br.upper
    sc = scale(inst, lb, eps, keep_up_to=ub)
    horizon = _floor(Fraction(inst.n - 1) * Fraction(ub) / (Fraction(eps) * Fraction(lb)))
    found = _cost_dp(inst, sc.costs, horizon)
    if found is None:  # cannot happen when the bracket is valid
        raise RuntimeError("rounded instance has no feasible path below the horizon")
    p = make_path(inst, found[1])
    return FptasResult("APPROX", p, p.cost, lb, ub, br.iterations, eps)
