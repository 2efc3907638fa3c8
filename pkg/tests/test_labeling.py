import pytest

from rcsp import (
    Instance, Mode, Wait, acyclic_labeling, dominates, enumerate_all_paths, feasible_paths,
    is_feasible, label_correcting, label_setting, make_path, pareto_filter, solve_exact,
)
from rcsp.generate import desk_suite
from rcsp.labeling import Label, ParetoSet

from conftest import diamond

RUNNERS = [label_correcting, label_setting, acyclic_labeling]


def oracle_frontier(inst):
    vals = {p.values for p in feasible_paths(inst)}
    return {v for v in vals if not any(dominates(w, v) for w in vals)}


def test_dominance():
    assert dominates((1, 2), (2, 3))
    assert not dominates((1, 2), (1, 2))
    assert not dominates((1, 3), (2, 2)) and not dominates((2, 2), (1, 3))
    with pytest.raises(ValueError):
        dominates((1,), (1, 2))


def test_pareto_filter():
    vs = [(2, 20), (12, 12), (20, 2)]
    assert pareto_filter(vs) == vs
    assert pareto_filter([(1, 1), (2, 2)]) == [(1, 1)]
    assert pareto_filter([(1, 1), (2, 2)], k=2) == [(1, 1), (2, 2)]


def test_pareto_set_matches_filter():
    import random
    rng = random.Random(3)
    for _ in range(200):
        vs = [tuple(rng.randint(0, 6) for _ in range(3)) for _ in range(12)]
        ps = ParetoSet()
        for v in vs:
            ps.insert(Label(1, v))
        assert ps.values() == set(pareto_filter(set(vs)))


@pytest.mark.parametrize("run", RUNNERS)
def test_diamond_frontiers(run):
    assert run(diamond(15)).values() == {(12, 12), (20, 2)}
    assert run(diamond(25)).values() == {(2, 20), (12, 12), (20, 2)}
    assert run(diamond(1)).values() == set()
    assert min(run(diamond(15)).values()) == (12, 12)


@pytest.mark.parametrize("run", RUNNERS)
def test_trivial_graphs(run):
    single = Instance(2, [(1, 2, 3, (4,))], 1, 1, 2, budget=(10,))
    assert run(single).values() == {(3, 4)}
    cut = Instance(3, [(1, 2, 3, (4,))], 1, 1, 3, budget=(10,))
    assert run(cut).values() == set()


def test_chain_has_one_label_per_node():
    arcs = [(i, i + 1, i, (1,)) for i in range(1, 6)]
    inst = Instance(6, arcs, 1, 1, 6, budget=(10,))
    for sink in range(2, 7):
        front = acyclic_labeling(inst.replace(sink=sink))
        assert front.values() == {(sum(range(1, sink)), sink - 1)}


def test_two_criteria_unconstrained():
    # two minimized criteria carried as resources with no binding windows, zero cost
    arcs = [(1, 2, 0, (1, 4)), (1, 3, 0, (4, 1)), (2, 4, 0, (1, 4)), (3, 4, 0, (4, 1))]
    inst = Instance(4, arcs, 2, 1, 4, budget=(100, 100))
    assert acyclic_labeling(inst).values() == {(0, 2, 8), (0, 8, 2)}


def test_setting_rejects_negative_costs():
    inst = Instance(3, [(1, 2, -1, ()), (2, 3, 1, ())], 0, 1, 3)
    with pytest.raises(ValueError, match="label_correcting"):
        label_setting(inst)
    assert label_correcting(inst).values() == {(0,)}


def test_acyclic_rejects_cycles():
    inst = Instance(3, [(1, 2, 1, (1,)), (2, 1, 1, (1,)), (2, 3, 1, (1,))], 1, 1, 3, budget=(5,))
    with pytest.raises(ValueError):
        acyclic_labeling(inst)
    assert label_correcting(inst).values() == {(2, 2)}
    assert label_setting(inst).values() == {(2, 2)}


def test_solve_exact():
    s = solve_exact(diamond(15))
    assert (s.status, s.cost, s.path.nodes) == ("OPTIMAL", 12, (1, 2, 3, 4))
    s = solve_exact(diamond(25), "acyclic")
    assert (s.cost, s.path.nodes) == (2, (1, 2, 4))
    assert solve_exact(diamond(1), "fixation").status == "INFEASIBLE"
    with pytest.raises(ValueError):
        solve_exact(diamond(), "nope")


def test_agreement_with_oracle_on_random_instances():
    for inst in desk_suite(250, seed=7):
        want = oracle_frontier(inst)
        for run in RUNNERS:
            front = run(inst)
            assert front.values() == want, run.__name__
            for lab in front:
                p = lab.path(inst)
                assert is_feasible(inst, p) and p.values == lab.values


def test_wait_clamp_and_nowait_drop():
    # arriving at node 2 with 3 units while its window opens at 5
    base = dict(n=3, arcs=[(1, 2, 1, (3,)), (2, 3, 1, (3,))], resources=1, source=1, sink=3,
                mode=Mode.WINDOWS, lower=((0,), (5,), (0,)), upper=((0,), (9,), (9,)))
    assert label_correcting(Instance(wait=Wait.WAIT, **base)).values() == {(2, 8)}
    assert label_correcting(Instance(wait=Wait.NO_WAIT, **base)).values() == set()


def test_nowait_dominance_keeps_paths_that_reach_a_later_window():
    # the cheaper-in-resource prefix arrives too early for node 4's window
    arcs = [(1, 2, 1, (1,)), (1, 3, 1, (2,)), (2, 4, 1, (1,)), (3, 4, 1, (1,)), (4, 5, 1, (0,))]
    inst = Instance(5, arcs, 1, 1, 5, mode=Mode.WINDOWS, wait=Wait.NO_WAIT,
                    lower=((0,), (0,), (0,), (3,), (0,)), upper=((0,), (9,), (9,), (9,), (9,)))
    for run in RUNNERS:
        assert run(inst).values() == {(3, 3)}


def test_k_dominance_keeps_k_cheapest_costs():
    for inst in desk_suite(120, seed=31, R=(1, 3)):
        costs = sorted(p.cost for p in feasible_paths(inst))
        for k in (2, 3):
            for run in RUNNERS:
                got = {lab.cost for lab in run(inst, k)}
                assert set(costs[:k]) <= got


def test_label_count_grows_on_complete_dags():
    def complete(n):
        arcs = [(i, j, 2**j, (0,)) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        return Instance(n, arcs, 1, 1, n, budget=(0,))

    counts = {}
    for n in (4, 8):
        inst = complete(n)
        npaths = len(enumerate_all_paths(inst))
        front = acyclic_labeling(inst, k=npaths)  # nothing can be pruned
        assert len(front) == npaths
        counts[n] = len(front)
    assert counts[8] >= 2 * counts[4]
