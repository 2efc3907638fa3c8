from rcsp import (
    Instance, Mode, Wait, feasible_paths, pretraitement, random_instance, reduce_windows,
    shortest_path_tree, solve_exact,
)
from rcsp.generate import desk_suite
from rcsp.preprocess import initial_upper_bound

import pytest

from conftest import chain3, diamond


def feasible_arcsets(inst, arc_map=None):
    out = set()
    for p in feasible_paths(inst):
        out.add(tuple(arc_map[k] for k in p.arcs) if arc_map is not None else p.arcs)
    return out


def test_chain_windows_tighten():
    rep = reduce_windows(chain3())
    w = rep.instance
    assert w.window(2) == ((5,), (5,)) and w.window(3) == ((10,), (10,))
    assert not rep.removed_nodes and not rep.removed_arcs and not rep.infeasible


def test_chain_becomes_infeasible():
    rep = reduce_windows(chain3(last=(0, 8)))
    assert rep.infeasible
    assert 2 in rep.removed_nodes
    assert feasible_paths(rep.instance) == []


def test_reduce_rejects_final_mode():
    with pytest.raises(ValueError):
        reduce_windows(diamond())


def test_reduction_keeps_feasible_paths_and_is_idempotent():
    suite = desk_suite(150, seed=11, modes=("windows",), n=(4, 9))
    for inst in suite:
        rep = reduce_windows(inst)
        assert feasible_arcsets(inst) == feasible_arcsets(rep.instance, rep.arc_map)
        again = reduce_windows(rep.instance)
        assert not again.changed


def test_reduction_on_cyclic_graph():
    # 2 <-> 3 cycle with strictly increasing resource
    arcs = [(1, 2, 1, (1,)), (2, 3, 1, (2,)), (3, 2, 1, (2,)), (3, 4, 1, (1,)), (2, 4, 5, (1,))]
    inst = Instance(4, arcs, 1, 1, 4, mode=Mode.WINDOWS, wait=Wait.WAIT,
                    lower=((0,), (0,), (0,), (0,)), upper=((0,), (6,), (6,), (4,)))
    rep = reduce_windows(inst)
    assert feasible_arcsets(inst) == feasible_arcsets(rep.instance, rep.arc_map)
    assert not reduce_windows(rep.instance).changed


def test_shortest_path_trees():
    t1 = diamond()
    fwd = shortest_path_tree(t1, "cost", "from_source")
    assert fwd.dist[4] == 2
    back = shortest_path_tree(t1, 1, "into_sink")
    assert back.dist[1] == 2


def test_upper_bound_start():
    assert initial_upper_bound(diamond()) == 10 * 3 + 1


def test_pretraitement_examples():
    res = pretraitement(diamond(25))
    assert res.status == "OPTIMAL" and res.path.nodes == (1, 2, 4) and res.upper == 2
    assert pretraitement(diamond(1)).status == "INFEASIBLE"
    res = pretraitement(diamond(15))
    first = res.log[0]
    assert first["L"] >= 2 and first["U"] == 12
    assert 2 in first["dropped_arcs"]  # arc (2,4)
    assert res.status == "OPTIMAL" and res.path.nodes == (1, 2, 3, 4) and res.upper == 12


def test_pretraitement_against_oracle():
    for inst in desk_suite(300, seed=21, modes=("final",), n=(4, 10)):
        ref = solve_exact(inst)
        for strict in (False, True):
            res = pretraitement(inst, strict_mode=strict)
            if ref.status == "INFEASIBLE":
                assert res.status == "INFEASIBLE"
                continue
            assert res.status != "INFEASIBLE"
            assert res.lower <= ref.cost <= res.upper
            if res.status == "OPTIMAL":
                assert res.path.cost == ref.cost
            elif res.path is not None:
                assert res.path.cost == res.upper
            if res.status == "BOUNDS":
                left = solve_exact(res.instance)
                assert left.cost == ref.cost or res.upper == ref.cost


def test_strict_mode_can_stop_with_a_gap():
    # two stages, each a cheap heavy arc or a dear light one; budget fits one heavy arc
    arcs = [(1, 2, 1, (10,)), (1, 3, 10, (0,)), (2, 4, 0, (0,)), (3, 4, 0, (0,)),
            (4, 5, 1, (10,)), (4, 6, 10, (0,)), (5, 7, 0, (0,)), (6, 7, 0, (0,))]
    inst = Instance(7, arcs, 1, 1, 7, budget=(10,))
    res = pretraitement(inst, strict_mode=True)
    assert (res.status, res.lower, res.upper) == ("BOUNDS", 2, 11)
    assert solve_exact(res.instance).cost == 11
    res = pretraitement(inst)
    assert res.status == "OPTIMAL" and res.path.cost == 11
    assert 6 in res.removed_nodes  # the witness itself costs U and is pruned
