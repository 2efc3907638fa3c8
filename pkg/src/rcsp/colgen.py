"""Small column generation loop with resource-constrained pricing.

The restricted master covers tasks with paths: each task is a graph node,
and a path covers the tasks at the nodes it visits.  Its LP duals price the
nodes; pricing looks for feasible s-t paths whose cost minus the duals of
visited task nodes is negative, and feeds the best few back to the master.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import Arc, Instance, Path, as_number, feasible_paths, make_path
from .labeling import ALGORITHMS
from .preprocess import initial_upper_bound
from .simplex import solve_covering_lp


@dataclass
class CoveringProblem:
    tasks: list  # task nodes, one covering row each
    columns: list  # Path objects
    artificial_cost: object

    def coverage(self, p: Path) -> frozenset:
        visited = set(p.nodes)
        return frozenset(i for i, node in enumerate(self.tasks) if node in visited)


@dataclass
class MasterSolution:
    x: list  # values of the real columns
    artificial: list  # values of the artificial covers
    objective: Fraction
    duals: list


def _check_tasks(inst: Instance, tasks):
    tasks = list(tasks)
    if len(set(tasks)) != len(tasks):
        raise ValueError("duplicate task node")
    for v in tasks:
        if v in (inst.source, inst.sink):
            raise ValueError("a task cannot sit on the source or the sink")
        if not 1 <= v <= inst.n:
            raise ValueError(f"task node {v} out of range")
    return tasks


def solve_master_lp(problem: CoveringProblem) -> MasterSolution:
    """Covering LP over the pool plus one artificial cover per task."""
    m = len(problem.tasks)
    arts = [frozenset({i}) for i in range(m)]
    cols = arts + [problem.coverage(p) for p in problem.columns]
    costs = [problem.artificial_cost] * m + [p.cost for p in problem.columns]
    res = solve_covering_lp(costs, cols, m, list(range(m)))
    return MasterSolution(res.x[m:], res.x[:m], res.objective, res.duals)


def reduced_costs(inst: Instance, duals, task_map) -> Instance:
    """Copy of ``inst`` with each arc cost lowered by the dual of its head's task.

    ``task_map`` lists the task node of each dual.
    """
    if len(duals) != len(task_map):
        raise ValueError("one dual per task expected")
    _check_tasks(inst, task_map)
    price = {}
    for node, y in zip(task_map, duals):
        price[node] = price.get(node, 0) + as_number(y)
    arcs = tuple(
        Arc(a.tail, a.head, a.cost - price.get(a.head, 0), a.consumption) for a in inst.arcs
    )
    return inst.replace(arcs=arcs)


@dataclass
class ColgenResult:
    status: str  # "CONVERGED" | "NOT_CONVERGED"
    objective: Fraction
    columns: list
    log: list = field(default_factory=list)
    duals: list = field(default_factory=list)


def price(inst: Instance, tasks, duals, k=1, algo="correction"):
    """Feasible paths sorted by reduced cost, with the exact minimum first.

    Returns ``[(reduced_cost, path), ...]`` for the sink labels of the
    pricing run (one per label), cheapest first.
    """
    red = reduced_costs(inst, duals, tasks)
    front = ALGORITHMS[algo](red, k)
    out = []
    for lab in sorted(front, key=lambda lab: lab.values):
        out.append((lab.cost, make_path(inst, lab.arcs())))
    return out


def colgen_loop(inst: Instance, tasks, k_columns=3, max_iters=50, pricing_algo="correction",
                initial_columns=()) -> ColgenResult:
    """Alternate master solves and pricing until no column has negative reduced cost."""
    if inst.topological_order is None:
        raise ValueError("column generation demo needs an acyclic graph")
    if k_columns < 1:
        raise ValueError("k_columns must be positive")
    tasks = _check_tasks(inst, tasks)
    problem = CoveringProblem(tasks, list(initial_columns), initial_upper_bound(inst))
    seen = {p.arcs for p in problem.columns}
    log = []
    for it in range(1, max_iters + 1):
        master = solve_master_lp(problem)
        priced = price(inst, tasks, master.duals, k=k_columns, algo=pricing_algo)
        min_red = priced[0][0] if priced else None
        added = 0
        for red, p in priced:
            if red >= 0 or added >= k_columns:
                break
            if p.arcs in seen:
                continue
            seen.add(p.arcs)
            problem.columns.append(p)
            added += 1
        log.append({"iter": it, "obj": master.objective, "new_cols": added, "min_redcost": min_red})
        if min_red is None or min_red >= 0:
            return ColgenResult("CONVERGED", master.objective, problem.columns, log, master.duals)
        if added == 0:
            raise RuntimeError("negative reduced cost column already in the pool")
    master = solve_master_lp(problem)
    return ColgenResult("NOT_CONVERGED", master.objective, problem.columns, log, master.duals)


def full_enumeration_lp(inst: Instance, tasks, cap=10_000) -> MasterSolution:
    """Master LP over every feasible path at once (small instances only)."""
    tasks = _check_tasks(inst, tasks)
    problem = CoveringProblem(tasks, feasible_paths(inst, cap), initial_upper_bound(inst))
    return solve_master_lp(problem)
