import itertools
import warnings
from fractions import Fraction

import pytest

from rcsp import (
    Instance, InstanceError, Mode, PathOverflowError, Wait, enumerate_all_paths,
    feasible_paths, final_to_windows, is_feasible, make_path, path_consumption,
    random_instance, topological_order,
)
from rcsp.core import as_number, count_paths, format_number

from conftest import chain3, diamond


def path_by_nodes(inst, nodes):
    arcs = []
    for u, v in zip(nodes, nodes[1:]):
        arcs.append(next(k for k, a in enumerate(inst.arcs) if (a.tail, a.head) == (u, v)))
    return make_path(inst, arcs)


def test_numbers_are_exact():
    assert as_number(Fraction(6, 3)) == 2 and isinstance(as_number(Fraction(6, 3)), int)
    assert as_number("7/2") == Fraction(7, 2)
    with pytest.raises(TypeError):
        as_number(0.5)
    assert format_number(Fraction(7, 2)) == "3.5"
    assert format_number(Fraction(1, 3)) == "1/3"
    assert format_number(-4) == "-4"


def test_validation_errors():
    with pytest.raises(InstanceError, match="dangling"):
        Instance(3, [(1, 5, 1, (0,))], 1, 1, 3, budget=(1,))
    with pytest.raises(InstanceError, match="negative consumption"):
        Instance(3, [(1, 3, 1, (-1,))], 1, 1, 3, budget=(1,))
    with pytest.raises(InstanceError, match="a > b"):
        chain3(mid=(5, 4))
    with pytest.raises(InstanceError, match="absorbing"):
        Instance(3, [(1, 2, 1, ()), (2, 1, -2, ()), (2, 3, 1, ())], 0, 1, 3)


def test_positive_cycles_are_allowed():
    inst = Instance(3, [(1, 2, 1, ()), (2, 1, 2, ()), (2, 3, 1, ())], 0, 1, 3)
    assert topological_order(inst) is None


def test_topological_order():
    assert topological_order(diamond()) == [1, 2, 3, 4]
    two_cycle = Instance(2, [(1, 2, 1, ()), (2, 1, 1, ())], 0, 1, 2)
    assert topological_order(two_cycle) is None
    # disconnected DAG: only the arc-forward property matters
    inst = Instance(6, [(5, 6, 1, ()), (3, 4, 1, ()), (1, 2, 1, ()), (6, 2, 1, ())], 0, 1, 2)
    pos = {v: i for i, v in enumerate(topological_order(inst))}
    assert sorted(pos) == list(range(1, 7))
    assert all(pos[a.tail] < pos[a.head] for a in inst.arcs)


def test_topological_order_on_random_dags():
    for seed in range(50):
        inst = random_instance(seed, n=9, arc_density=0.4)
        pos = {v: i for i, v in enumerate(topological_order(inst))}
        assert all(pos[a.tail] < pos[a.head] for a in inst.arcs)


def test_final_to_windows():
    w = final_to_windows(diamond(15))
    assert w.mode is Mode.WINDOWS
    assert all(w.window(i) == ((0,), (15,)) for i in range(1, 5))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        assert final_to_windows(w) is w
    assert caught
    r0 = Instance(2, [(1, 2, 3, ())], 0, 1, 2)
    assert final_to_windows(r0).arcs == r0.arcs
    zero = final_to_windows(diamond(0))
    assert all(zero.window(i) == ((0,), (0,)) for i in range(1, 5))
    assert feasible_paths(zero) == []


def test_final_to_windows_keeps_feasible_set():
    for seed in range(100):
        inst = random_instance(seed, n=7, R=2, arc_density=0.5)
        a = {p.arcs for p in feasible_paths(inst)}
        b = {p.arcs for p in feasible_paths(final_to_windows(inst))}
        assert a == b


def test_path_consumption():
    t2 = chain3()
    p = path_by_nodes(t2, [1, 2, 3])
    assert path_consumption(t2, p, 1) == 10
    waiting = chain3(mid=(8, 100), wait=Wait.WAIT)
    assert path_consumption(waiting, path_by_nodes(waiting, [1, 2, 3]), 1) == 13
    t1 = diamond()
    assert path_consumption(t1, path_by_nodes(t1, [1, 2, 3, 4]), 1) == 12
    with pytest.raises(IndexError):
        path_consumption(t1, p, 2)


def test_wait_consumption_never_decreases_along_path():
    for seed in range(60):
        inst = random_instance(seed, n=7, R=2, window_mode="windows", wait="wait")
        for p in enumerate_all_paths(inst):
            for x, y in zip(p.profile, p.profile[1:]):
                assert all(u <= v for u, v in zip(x, y))


def test_nowait_consumption_is_the_arc_sum():
    for seed in range(60):
        inst = random_instance(seed, n=7, R=2, window_mode="windows", wait="nowait")
        for p in enumerate_all_paths(inst):
            sums = tuple(sum(inst.arcs[k].consumption[r] for k in p.arcs) for r in range(2))
            assert p.consumption == sums


def test_is_feasible():
    t1 = diamond(15)
    assert is_feasible(t1, path_by_nodes(t1, [1, 2, 3, 4]))
    assert not is_feasible(t1, path_by_nodes(t1, [1, 2, 4]))
    assert is_feasible(t1, make_path(t1, []))


def test_enumerate_all_paths():
    t1 = diamond()
    got = sorted(p.values for p in enumerate_all_paths(t1))
    assert got == [(2, 20), (12, 12), (20, 2)]
    cut = Instance(3, [(1, 2, 1, ())], 0, 1, 3)
    assert enumerate_all_paths(cut) == []
    assert len(enumerate_all_paths(chain3())) == 1
    with pytest.raises(PathOverflowError):
        enumerate_all_paths(t1, cap=2)


def test_count_paths_matches_enumeration():
    for seed in range(50):
        inst = random_instance(seed, n=8, arc_density=0.5)
        assert count_paths(inst) == len(enumerate_all_paths(inst))


def test_generator():
    a = random_instance(1, n=6, arc_density=0.5, R=1)
    assert a == random_instance(1, n=6, arc_density=0.5, R=1)
    full = random_instance(3, n=6, arc_density=1)
    assert full.m == 15
    unit = random_instance(4, n=7, arc_density=0.6, cost_range=(1, 1))
    hops = [len(p) for p in feasible_paths(unit)]
    from rcsp import solve_exact
    sol = solve_exact(unit)
    if hops:
        assert sol.cost == min(hops)
    else:
        assert sol.status == "INFEASIBLE"
    for k, arc in enumerate(full.arcs):
        assert arc.tail < arc.head
    with pytest.raises(ValueError):
        random_instance(0, n=1)
