"""Smith normal form over the integers and homology of small chain complexes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Mapping, Sequence

Matrix = list[list[int]]


def _copy(m: Sequence[Sequence[int]]) -> Matrix:
    return [[int(x) for x in row] for row in m]


def smith_diagonal(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors ``d_1 | d_2 | ...`` (all positive).

    Pivots are chosen by minimal absolute value, which keeps the entries of
    these small matrices from growing.
    """
    A = _copy(matrix)
    rows = len(A)
    cols = len(A[0]) if rows else 0
    diag: list[int] = []
    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = A[i][j]
                if v and (best is None or abs(v) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            moved = False
            for i in range(t + 1, rows):
                if A[i][t]:
                    q = A[i][t] // p
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        moved = True
            for j in range(t + 1, cols):
                if A[t][j]:
                    q = A[t][j] // p
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        moved = True
            if moved:
                # a smaller remainder sits in row or column t; bring it to the pivot
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, rows) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, cols) if A[t][j]]
                _, i, j = min(cand)
                if i != t:
                    A[t], A[i] = A[i], A[t]
                else:
                    for row in A:
                        row[t], row[j] = row[j], row[t]
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad])]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def rank(matrix: Sequence[Sequence[int]]) -> int:
    return len(smith_diagonal(matrix))


@dataclass(frozen=True)
class HomologyGroup:
    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free": self.free_rank, "torsion": list(self.torsion)}


@dataclass
class IntegerChainComplex:
    """Graded free abelian groups with boundary matrices.

    ``boundary[r]`` maps degree ``r`` to degree ``r - 1``: one row per basis
    element of degree ``r - 1`` and one column per basis element of degree ``r``.
    Missing matrices are zero.
    """

    basis: dict[int, list[Hashable]]
    boundary: dict[int, Matrix] = field(default_factory=dict)
    context: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for r, m in self.boundary.items():
            src = len(self.basis.get(r, []))
            dst = len(self.basis.get(r - 1, []))
            if len(m) != dst or any(len(row) != src for row in m):
                raise ValueError(f"boundary in degree {r} has the wrong shape")

    def matrix(self, r: int) -> Matrix:
        if r in self.boundary:
            return self.boundary[r]
        return [[0] * len(self.basis.get(r, [])) for _ in self.basis.get(r - 1, [])]

    def degrees(self) -> list[int]:
        return sorted(r for r, b in self.basis.items() if b)

    def is_complex(self) -> bool:
        for r in self.degrees():
            a, b = self.matrix(r - 1), self.matrix(r)
            if not a or not b or not b[0]:
                continue
            for i in range(len(a)):
                for j in range(len(b[0])):
                    if sum(a[i][m] * b[m][j] for m in range(len(b))):
                        return False
        return True


def homology(cx: IntegerChainComplex) -> dict[int, HomologyGroup]:
    """``H_r = ker d_r / im d_{r+1}`` for every degree carrying cells."""
    if not cx.is_complex():
        raise ValueError("boundary of a boundary is not zero")
    out = {}
    for r in cx.degrees():
        out_r = smith_diagonal(cx.matrix(r))
        in_r = smith_diagonal(cx.matrix(r + 1))
        free = len(cx.basis[r]) - len(out_r) - len(in_r)
        out[r] = HomologyGroup(free, tuple(x for x in in_r if x > 1))
    return out
