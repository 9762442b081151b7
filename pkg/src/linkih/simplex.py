"""Exact linear programming on integer data.

Solves ``min c.x  s.t.  G x >= h, x >= 0`` for integer ``G, h`` and a
non-negative integer cost ``c`` with the dual simplex method.  A non-negative
cost makes the all-slack basis dual feasible, so no phase I is needed.

The tableau is kept integral with fraction-free (Bareiss) pivoting: every
entry is the true rational value times the common denominator ``D``, and the
division by the previous pivot in each update is exact.  Bland's rule is used
on both the leaving row and the entering column, which rules out cycling and
makes the returned vertex deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class LPError(ValueError):
    pass


@dataclass(frozen=True)
class LPSolution:
    x: tuple[Fraction, ...]
    value: Fraction
    pivots: int


def minimize(
    c: Sequence[int],
    G: Sequence[Sequence[int]],
    h: Sequence[int],
    max_pivots: int = 100_000,
) -> LPSolution | None:
    """Return an optimal vertex, or ``None`` when the constraints are infeasible."""
    nv = len(c)
    m = len(G)
    if any(int(cj) < 0 for cj in c):
        raise LPError("dual simplex start needs a non-negative cost vector")
    if len(h) != m or any(len(row) != nv for row in G):
        raise LPError("constraint shapes do not match")

    # row i:  -G_i x + s_i = -h_i
    rows = []
    for i, (g, hi) in enumerate(zip(G, h)):
        row = [-int(v) for v in g] + [0] * m + [-int(hi)]
        row[nv + i] = 1
        rows.append(row)
    obj = [int(v) for v in c] + [0] * (m + 1)
    basis = [nv + i for i in range(m)]
    D = 1
    pivots = 0

    while True:
        # leaving row: infeasible basic variable with the smallest index
        r = -1
        for i in range(m):
            if rows[i][-1] < 0 and (r < 0 or basis[i] < basis[r]):
                r = i
        if r < 0:
            break
        if pivots >= max_pivots:
            raise LPError("pivot limit exceeded")
        prow = rows[r]
        s = -1
        for j in range(nv + m):
            a = prow[j]
            if a >= 0:
                continue
            if s < 0:
                s = j
                continue
            # ratio obj[j] / -a  <  obj[s] / -prow[s]
            lhs = obj[j] * (-prow[s])
            rhs = obj[s] * (-a)
            if lhs < rhs:
                s = j
        if s < 0:
            return None
        p = prow[s]
        for i in range(m):
            if i == r:
                continue
            row = rows[i]
            f = row[s]
            if f == 0:
                if p != D:
                    rows[i] = [(p * v) // D for v in row]
                continue
            rows[i] = [(p * v - f * w) // D for v, w in zip(row, prow)]
        f = obj[s]
        obj = [(p * v - f * w) // D for v, w in zip(obj, prow)]
        basis[r] = s
        D = p
        if D < 0:
            rows = [[-v for v in row] for row in rows]
            obj = [-v for v in obj]
            D = -D
        pivots += 1

    x = [Fraction(0)] * nv
    for i, b in enumerate(basis):
        if b < nv:
            x[b] = Fraction(rows[i][-1], D)
    value = sum((Fraction(int(cj)) * xj for cj, xj in zip(c, x)), Fraction(0))
    return LPSolution(tuple(x), value, pivots)


def check_feasible(G: Sequence[Sequence[int]], h: Sequence[int], x: Sequence[Fraction]) -> bool:
    """Plain evaluation of ``G x >= h, x >= 0`` (used to audit solutions)."""
    if any(v < 0 for v in x):
        return False
    for g, hi in zip(G, h):
        if sum(Fraction(gj) * xj for gj, xj in zip(g, x)) < hi:
            return False
    return True
