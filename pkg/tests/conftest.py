import random
from fractions import Fraction

import pytest

from rcsp import Instance, Mode, Wait
from rcsp.pareto import MArc, MIN, MultiInstance


def diamond(budget=15):
    """Four nodes, three s-t paths: 1-2-4 (2, 20), 1-2-3-4 (12, 12), 1-3-4 (20, 2)."""
    arcs = [(1, 2, 1, (10,)), (1, 3, 10, (1,)), (2, 4, 1, (10,)), (3, 4, 10, (1,)),
            (2, 3, 1, (1,))]
    return Instance(4, arcs, 1, 1, 4, budget=(budget,))


def chain3(mid=(0, 100), last=(0, 100), wait=Wait.NO_WAIT):
    """1 -> 2 -> 3, consumption 5 per arc."""
    return Instance(3, [(1, 2, 1, (5,)), (2, 3, 1, (5,))], 1, 1, 3, mode=Mode.WINDOWS,
                    wait=wait, lower=((0,), (mid[0],), (last[0],)),
                    upper=((0,), (mid[1],), (last[1],)))


def twin_paths():
    """Two-criteria square: 1-2-4 is (2, 8), 1-3-4 is (8, 2)."""
    arcs = [MArc(1, 2, (1, 4)), MArc(1, 3, (4, 1)), MArc(2, 4, (1, 4)), MArc(3, 4, (4, 1))]
    return MultiInstance(4, arcs, 1, 4, (MIN, MIN))


def random_multi(seed, n=(4, 6), R=2, values=(1, 5), density=(0.3, 0.7), directions=None,
                 max_paths=60):
    """Random DAG with strictly positive criterion values, at least one s-t path."""
    rng = random.Random(seed)
    while True:
        nn = rng.randint(*n)
        d = rng.uniform(*density)
        arcs = []
        for i in range(1, nn + 1):
            for j in range(i + 1, nn + 1):
                if rng.random() < d:
                    arcs.append(MArc(i, j, tuple(rng.randint(*values) for _ in range(R))))
        dirs = directions or tuple(rng.choice((MIN, "max")) for _ in range(R))
        m = MultiInstance(nn, arcs, 1, nn, dirs)
        k = len(m.paths(10_000))
        if 1 <= k <= max_paths:
            return m


@pytest.fixture
def t1():
    return diamond(15)


@pytest.fixture
def t2():
    return chain3()


@pytest.fixture
def t3():
    return twin_paths()


def frac(x):
    return Fraction(x)
