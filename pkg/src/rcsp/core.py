"""Instance and path model for resource-constrained shortest paths.

Numbers are kept exact: integral values are stored as ``int`` and everything
else as ``fractions.Fraction``.  Nodes are numbered ``1..n``.
"""
from __future__ import annotations

import enum
import heapq
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


class Mode(enum.Enum):
    FINAL = "final"
    WINDOWS = "windows"


class Wait(enum.Enum):
    WAIT = "wait"
    NO_WAIT = "nowait"


class InstanceError(ValueError):
    """Raised when an instance violates a structural invariant."""


class PathOverflowError(RuntimeError):
    """Raised by the enumeration oracle when the path count exceeds its cap."""


def as_number(x) -> Number:
    """Normalize ``x`` to an exact ``int`` or ``Fraction``.

    Floats are rejected on purpose: every value entering the solvers must be
    exact.  Strings go through ``Fraction`` so ``"3.5"`` becomes ``7/2``.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        raise TypeError(f"float {x!r} is not exact; pass a Fraction or string")
    q = Fraction(x)
    return q.numerator if q.denominator == 1 else q


def format_number(x: Number) -> str:
    """Shortest exact text for ``x``: integer, terminating decimal, or p/q."""
    q = Fraction(x)
    if q.denominator == 1:
        return str(q.numerator)
    d = q.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{q.numerator}/{q.denominator}"
    digits = max(twos, fives)
    scaled = q * 10**digits
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled.numerator), 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    cost: Number
    consumption: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "cost", as_number(self.cost))
        object.__setattr__(
            self, "consumption", tuple(as_number(t) for t in self.consumption)
        )


@dataclass(frozen=True)
class Instance:
    """A directed graph with arc costs, resource consumptions and windows.

    In ``Mode.FINAL`` only ``budget`` (the sink bound per resource) is given and
    every node implicitly carries the window ``[0, budget]``.  In
    ``Mode.WINDOWS`` the per-node ``lower``/``upper`` tables are authoritative;
    row ``i - 1`` holds node ``i``.
    """

    n: int
    arcs: tuple
    resources: int
    source: int
    sink: int
    mode: Mode = Mode.FINAL
    wait: Wait = Wait.NO_WAIT
    lower: tuple = ()
    upper: tuple = ()
    budget: tuple = ()

    def __post_init__(self):
        arcs = tuple(a if isinstance(a, Arc) else Arc(*a) for a in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "wait", Wait(self.wait))
        R = self.resources
        if self.mode is Mode.FINAL:
            object.__setattr__(self, "budget", tuple(as_number(b) for b in self.budget))
            object.__setattr__(self, "lower", ())
            object.__setattr__(self, "upper", ())
        else:
            lower = tuple(tuple(as_number(v) for v in row) for row in self.lower)
            upper = tuple(tuple(as_number(v) for v in row) for row in self.upper)
            if R == 0:
                lower = upper = tuple(() for _ in range(self.n))
            object.__setattr__(self, "lower", lower)
            object.__setattr__(self, "upper", upper)
            object.__setattr__(self, "budget", ())
        self._validate()

    def _validate(self):
        n, R = self.n, self.resources
        if n < 1:
            raise InstanceError("node count must be positive")
        if R < 0:
            raise InstanceError("resource count must be nonnegative")
        if not (1 <= self.source <= n and 1 <= self.sink <= n):
            raise InstanceError("source/sink out of range")
        if self.source == self.sink:
            raise InstanceError("source and sink must differ")
        for k, a in enumerate(self.arcs):
            if not (1 <= a.tail <= n and 1 <= a.head <= n):
                raise InstanceError(f"arc {k}: dangling node id")
            if len(a.consumption) != R:
                raise InstanceError(f"arc {k}: expected {R} consumption values")
            if any(t < 0 for t in a.consumption):
                raise InstanceError(f"arc {k}: negative consumption")
        if self.mode is Mode.FINAL:
            if len(self.budget) != R:
                raise InstanceError(f"expected {R} sink budget values")
        else:
            if len(self.lower) != n or len(self.upper) != n:
                raise InstanceError("windows table must have one row per node")
            for i in range(n):
                if len(self.lower[i]) != R or len(self.upper[i]) != R:
                    raise InstanceError(f"node {i + 1}: expected {R} windows")
                for r in range(R):
                    if self.lower[i][r] > self.upper[i][r]:
                        raise InstanceError(f"node {i + 1}: window with a > b")
        if any(a.cost < 0 for a in self.arcs) and not self.is_acyclic:
            if _has_negative_cycle(self):
                raise InstanceError("absorbing (negative-cost) cycle")

    # -- adjacency -------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.arcs)

    @cached_property
    def out_arcs(self) -> tuple:
        """``out_arcs[i]`` lists arc indices leaving node ``i`` (index 0 unused)."""
        out = [[] for _ in range(self.n + 1)]
        for k, a in enumerate(self.arcs):
            out[a.tail].append(k)
        return tuple(tuple(x) for x in out)

    @cached_property
    def in_arcs(self) -> tuple:
        inc = [[] for _ in range(self.n + 1)]
        for k, a in enumerate(self.arcs):
            inc[a.head].append(k)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def topological_order(self):
        return topological_order(self)

    @property
    def is_acyclic(self) -> bool:
        return self.topological_order is not None

    # -- windows ---------------------------------------------------------

    def window(self, i: int) -> tuple:
        """Effective ``(lower, upper)`` vectors at node ``i``."""
        if self.mode is Mode.FINAL:
            return (0,) * self.resources, self.budget
        return self.lower[i - 1], self.upper[i - 1]

    @cached_property
    def windows(self) -> tuple:
        return (None,) + tuple(self.window(i) for i in range(1, self.n + 1))

    @cached_property
    def binding_lower(self) -> tuple:
        """Per resource: can a lower bound reject an early arrival?

        Only relevant without waiting; consumption starts at 0 and never
        decreases, so a lower bound of 0 or less can never bind.
        """
        if self.mode is Mode.FINAL or self.wait is Wait.WAIT:
            return (False,) * self.resources
        return tuple(
            any(self.lower[i - 1][r] > 0 for i in range(1, self.n + 1) if i != self.source)
            for r in range(self.resources)
        )

    def replace(self, **changes) -> "Instance":
        fields = dict(
            n=self.n, arcs=self.arcs, resources=self.resources, source=self.source,
            sink=self.sink, mode=self.mode, wait=self.wait, lower=self.lower,
            upper=self.upper, budget=self.budget,
        )
        fields.update(changes)
        return Instance(**fields)


def _has_negative_cycle(inst: Instance) -> bool:
    dist = [0] * (inst.n + 1)
    for _ in range(inst.n):
        changed = False
        for a in inst.arcs:
            if dist[a.tail] + a.cost < dist[a.head]:
                dist[a.head] = dist[a.tail] + a.cost
                changed = True
        if not changed:
            return False
    return True


def topological_order(inst: Instance):
    """Kahn's algorithm with smallest-id-first tie breaking.

    Returns a list of node ids where every arc points forward, or ``None``
    when the graph has a cycle.
    """
    indeg = [0] * (inst.n + 1)
    for a in inst.arcs:
        indeg[a.head] += 1
    heap = [i for i in range(1, inst.n + 1) if indeg[i] == 0]
    heapq.heapify(heap)
    order = []
    out = inst.out_arcs
    while heap:
        i = heapq.heappop(heap)
        order.append(i)
        for k in out[i]:
            j = inst.arcs[k].head
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(heap, j)
    return order if len(order) == inst.n else None


def final_to_windows(inst: Instance) -> Instance:
    """Give every node the window ``[0, b_t]`` and switch to WINDOWS mode."""
    if inst.mode is Mode.WINDOWS:
        warnings.warn("instance already uses per-node windows", stacklevel=2)
        return inst
    lower = tuple((0,) * inst.resources for _ in range(inst.n))
    upper = tuple(inst.budget for _ in range(inst.n))
    return inst.replace(mode=Mode.WINDOWS, lower=lower, upper=upper, budget=())


# -- paths ---------------------------------------------------------------


def initial_consumption(inst: Instance) -> tuple:
    """Consumption vector on the empty path at the source."""
    if inst.wait is Wait.WAIT:
        lo = inst.window(inst.source)[0]
        return tuple(max(0, a) for a in lo)
    return (0,) * inst.resources


def step_consumption(inst: Instance, T: Sequence, arc: Arc) -> tuple:
    """Consumption on arrival at ``arc.head`` given ``T`` at ``arc.tail``."""
    if inst.wait is Wait.WAIT:
        lo = inst.windows[arc.head][0]
        return tuple(max(a, x + t) for a, x, t in zip(lo, T, arc.consumption))
    return tuple(x + t for x, t in zip(T, arc.consumption))


@dataclass(frozen=True)
class Path:
    """A chained arc sequence with its derived cost and final consumption."""

    arcs: tuple
    nodes: tuple
    cost: Number
    consumption: tuple
    profile: tuple = field(default=(), compare=False, repr=False)

    @property
    def start(self) -> int:
        return self.nodes[0]

    @property
    def end(self) -> int:
        return self.nodes[-1]

    @property
    def values(self) -> tuple:
        """``(cost, T^1, ..., T^R)``, the label vector of this path."""
        return (self.cost,) + self.consumption

    def __len__(self):
        return len(self.arcs)


def make_path(inst: Instance, arcs: Iterable[int], start: int | None = None) -> Path:
    """Build a :class:`Path` from arc indices, evaluating it under ``inst``.

    Consumption follows the instance's wait policy.  The path must start at
    the source for the consumption to be meaningful; ``start`` is only needed
    for the empty path elsewhere.
    """
    arcs = tuple(arcs)
    if arcs:
        first = inst.arcs[arcs[0]].tail
        if start is not None and start != first:
            raise ValueError("first arc does not leave the start node")
        start = first
    elif start is None:
        start = inst.source
    nodes = [start]
    cost = 0
    T = initial_consumption(inst) if start == inst.source else (0,) * inst.resources
    profile = [T]
    for k in arcs:
        a = inst.arcs[k]
        if a.tail != nodes[-1]:
            raise ValueError(f"arc {k} does not chain after node {nodes[-1]}")
        nodes.append(a.head)
        cost += a.cost
        T = step_consumption(inst, T, a)
        profile.append(T)
    return Path(tuple(arcs), tuple(nodes), cost, T, tuple(profile))


def path_consumption(inst: Instance, p: Path, r: int) -> Number:
    """Consumption of resource ``r`` (1-based) at the end of ``p``."""
    if not 1 <= r <= inst.resources:
        raise IndexError(f"resource index {r} out of range 1..{inst.resources}")
    return make_path(inst, p.arcs, p.start).consumption[r - 1]


def is_feasible(inst: Instance, p: Path) -> bool:
    """Window check at every node visited by the source-rooted path ``p``."""
    if p.start != inst.source:
        return False
    q = make_path(inst, p.arcs, p.start)
    for node, T in zip(q.nodes, q.profile):
        lo, hi = inst.windows[node]
        for a, x, b in zip(lo, T, hi):
            if x < a or x > b:
                return False
    return True


# -- oracle --------------------------------------------------------------


def enumerate_all_paths(inst: Instance, cap: int = 10_000) -> list:
    """Every elementary s-t path, found by depth-first search.

    Raises :class:`PathOverflowError` rather than truncating when more than
    ``cap`` paths exist.
    """
    out = inst.out_arcs
    arcs = inst.arcs
    paths = []
    stack = []
    on_path = {inst.source}

    def dfs(i):
        if i == inst.sink:
            if len(paths) >= cap:
                raise PathOverflowError(f"more than {cap} s-t paths")
            paths.append(make_path(inst, stack))
            return
        for k in out[i]:
            j = arcs[k].head
            if j in on_path:
                continue
            on_path.add(j)
            stack.append(k)
            dfs(j)
            stack.pop()
            on_path.discard(j)

    dfs(inst.source)
    return paths


def feasible_paths(inst: Instance, cap: int = 10_000) -> list:
    return [p for p in enumerate_all_paths(inst, cap) if is_feasible(inst, p)]


def count_paths(inst: Instance) -> int:
    """Number of s-t paths of an acyclic instance, by dynamic programming."""
    order = inst.topological_order
    if order is None:
        raise InstanceError("path counting needs an acyclic graph")
    count = [0] * (inst.n + 1)
    count[inst.source] = 1
    for i in order:
        if count[i] and i != inst.sink:
            for k in inst.out_arcs[i]:
                count[inst.arcs[k].head] += count[i]
    return count[inst.sink]
