"""Dense-tableau primal simplex over exact rationals for covering LPs.

Solves ``min c.x  s.t.  A x >= 1, x >= 0`` where ``A`` is 0/1.  The caller
must include one unit column per row (an artificial cover), which gives the
starting basis.  Bland's rule (lowest index enters, lowest basic index
leaves on ties) rules out cycling.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class UnboundedLP(RuntimeError):
    pass


@dataclass
class LPResult:
    x: list
    objective: Fraction
    duals: list
    pivots: int


def solve_covering_lp(costs, columns, rows, start_basis) -> LPResult:
    """Optimal primal values, objective and row duals.

    ``columns[j]`` is the set of rows covered by column ``j``.
    ``start_basis[i]`` is the index of a column covering exactly row ``i``.
    The duals are the reduced costs of the surplus variables in the final
    tableau.
    """
    N = len(columns)
    m = rows
    if len(start_basis) != m:
        raise ValueError("need one starting column per row")
    for i, j in enumerate(start_basis):
        if set(columns[j]) != {i}:
            raise ValueError(f"starting column {j} must cover exactly row {i}")
    width = N + m  # structural columns, then surplus columns
    # with a unit starting basis, B^-1 = I and the tableau is [A | -I | 1]
    T = []
    for i in range(m):
        row = [Fraction(0)] * (width + 1)
        for j, cov in enumerate(columns):
            if i in cov:
                row[j] = Fraction(1)
        row[N + i] = Fraction(-1)
        row[width] = Fraction(1)
        T.append(row)
    c = [Fraction(v) for v in costs] + [Fraction(0)] * m
    basis = list(start_basis)

    def reduced():
        d = c[:]
        for i, b in enumerate(basis):
            cb = c[b]
            if cb:
                row = T[i]
                for j in range(width):
                    if row[j]:
                        d[j] -= cb * row[j]
        return d

    pivots = 0
    d = reduced()
    while True:
        enter = next((j for j in range(width) if d[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][width] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            raise UnboundedLP(f"column {enter} improves without bound")
        piv = T[leave][enter]
        prow = [v / piv for v in T[leave]]
        T[leave] = prow
        for i in range(m):
            if i != leave:
                f = T[i][enter]
                if f:
                    T[i] = [v - f * p for v, p in zip(T[i], prow)]
        f = d[enter]
        d = [v - f * p for v, p in zip(d, prow[:width])]
        basis[leave] = enter
        pivots += 1

    x = [Fraction(0)] * N
    for i, b in enumerate(basis):
        if b < N:
            x[b] = T[i][width]
    objective = sum((Fraction(costs[j]) * x[j] for j in range(N)), Fraction(0))
    duals = [d[N + i] for i in range(m)]
    return LPResult(x, objective, duals, pivots)
