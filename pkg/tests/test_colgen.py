from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from rcsp import Instance, colgen_loop, full_enumeration_lp, make_path, reduced_costs, solve_master_lp
from rcsp.colgen import CoveringProblem, price
from rcsp.generate import desk_suite
from rcsp.simplex import solve_covering_lp

from conftest import diamond


def scipy_covering(costs, columns, rows):
    A = np.zeros((rows, len(columns)))
    for j, cov in enumerate(columns):
        for i in cov:
            A[i, j] = 1
    res = linprog([float(c) for c in costs], A_ub=-A, b_ub=-np.ones(rows), bounds=(0, None),
                  method="highs")
    assert res.status == 0
    return res.fun, -res.ineqlin.marginals


def test_simplex_small_cases():
    arts = [frozenset({0}), frozenset({1})]
    # columns: t1 alone 2, t2 alone 2, both 3
    res = solve_covering_lp([100, 100, 2, 2, 3], arts + [{0}, {1}, {0, 1}], 2, [0, 1])
    assert res.objective == 3
    res = solve_covering_lp([100, 5], [frozenset({0}), {0}], 1, [0])
    assert res.objective == 5 and res.x[1] == 1
    res = solve_covering_lp([100, 3, 5], [frozenset({0}), {0}, {0}], 1, [0])
    assert res.objective == 3 and res.x[1] == 1 and res.x[2] == 0


def test_simplex_against_scipy():
    import random
    rng = random.Random(5)
    for _ in range(100):
        rows = rng.randint(1, 5)
        cols = [frozenset({i}) for i in range(rows)]
        costs = [50] * rows
        for _ in range(rng.randint(1, 8)):
            cols.append(frozenset(i for i in range(rows) if rng.random() < 0.5))
            costs.append(rng.randint(1, 20))
        res = solve_covering_lp(costs, cols, rows, list(range(rows)))
        fun, duals = scipy_covering(costs, cols, rows)
        assert abs(float(res.objective) - fun) < 1e-7
        # dual objective equals primal (strong duality) and duals are feasible
        assert sum(res.duals) == res.objective
        assert all(y >= 0 for y in res.duals)
        for c, cov in zip(costs, cols):
            assert sum(res.duals[i] for i in cov) <= c


def test_reduced_costs():
    t1 = diamond()
    assert reduced_costs(t1, [0], [2]).arcs == t1.arcs
    red = reduced_costs(t1, [100], [3])
    assert [a.cost for a in red.arcs] == [1, -90, 1, 10, -99]
    p = make_path(red, [0, 4, 3])
    assert p.cost == 12 - 100
    assert make_path(red, [0, 2]).cost == 2


def test_master_lp():
    t1 = diamond()
    paths = [make_path(t1, [0, 4, 3])]
    sol = solve_master_lp(CoveringProblem([2, 3], paths, 1000))
    assert sol.objective == 12 and sol.x == [1]


def test_colgen_no_tasks():
    r = colgen_loop(diamond(15), [])
    assert r.status == "CONVERGED" and r.columns == [] and len(r.log) == 1


def test_colgen_matches_full_lp_on_diamond():
    t1 = diamond(15)
    r = colgen_loop(t1, [2])
    assert r.status == "CONVERGED"
    assert r.objective == full_enumeration_lp(t1, [2]).objective == 12


def test_column_count_does_not_change_objective():
    for inst in desk_suite(25, seed=41, modes=("final",), n=(5, 9)):
        tasks = list(range(2, inst.n))[:3]
        a = colgen_loop(inst, tasks, k_columns=1)
        b = colgen_loop(inst, tasks, k_columns=3)
        assert a.objective == b.objective


def test_not_converged_status():
    r = colgen_loop(diamond(15), [2, 3], k_columns=1, max_iters=1)
    assert r.status == "NOT_CONVERGED" and r.log[0]["min_redcost"] < 0


def test_final_pricing_has_no_negative_column():
    for inst in desk_suite(20, seed=43, modes=("final",), n=(5, 9)):
        tasks = list(range(2, inst.n))[:3]
        r = colgen_loop(inst, tasks)
        for red, p in price(inst, tasks, r.duals, k=1):
            assert red >= 0


def test_task_validation():
    with pytest.raises(ValueError):
        colgen_loop(diamond(), [1])
    with pytest.raises(ValueError):
        colgen_loop(diamond(), [2, 2])
