"""Cells of the local Morse datum and their intersection homology.

The local model attached at a critical sphere of index multiple ``k`` in
``R^d`` has cells labelled by row counts ``(k_1, ..., k_{d-2})`` of a symbolic
``(d-2) x k`` matrix: ``0 <= k_1 <= k``, each later row at most one shorter
than the previous one (and empty once a row is empty), and the last row
exactly ``max(0, k_{d-3} - 1)``.  A cell has dimension ``k + sum(k_i)``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .exact import codim_stratum, dim_moduli, perversity_pk
from .snf import HomologyGroup, IntegerChainComplex, homology


class PrintedTableDivergence(UserWarning):
    """The computed even-dimension table differs from the published one."""


@dataclass(frozen=True, order=True)
class SymbolicCell:
    d: int
    k: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        d, k, rows = self.d, self.k, self.rows
        if d < 4 or k < 1:
            raise ValueError("cells need d >= 4 and k >= 1")
        if len(rows) != d - 2:
            raise ValueError(f"expected {d - 2} rows, got {len(rows)}")
        if not 0 <= rows[0] <= k:
            raise ValueError(f"first row {rows[0]} outside 0..{k}")
        for i in range(1, d - 3):
            if not 0 <= rows[i] <= max(0, rows[i - 1] - 1):
                raise ValueError(f"row {i + 1} too long in {rows}")
        if rows[-1] != max(0, rows[-2] - 1):
            raise ValueError(f"last row must be max(0, {rows[-2]} - 1)")

    @property
    def dimension(self) -> int:
        return self.k + sum(self.rows)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.rows)) + ")"


def top_cell(d: int, k: int) -> SymbolicCell:
    rows = [max(0, k - i) for i in range(d - 3)]
    return SymbolicCell(d, k, tuple(rows + [max(0, rows[-1] - 1)]))


def enumerate_cells(d: int, k: int) -> list[SymbolicCell]:
    """Every valid row tuple once, sorted by dimension then rows."""
    if d < 4 or k < 1:
        raise ValueError("cells need d >= 4 and k >= 1")
    out: list[SymbolicCell] = []

    def grow(prefix: list[int]) -> None:
        if len(prefix) == d - 3:
            out.append(SymbolicCell(d, k, tuple(prefix + [max(0, prefix[-1] - 1)])))
            return
        bound = k if not prefix else max(0, prefix[-1] - 1)
        for v in range(bound + 1):
            grow(prefix + [v])

    grow([])
    return sorted(out, key=lambda c: (c.dimension, c.rows))


def _check_scale(cell: SymbolicCell, s: int) -> None:
    if not 0 <= s <= cell.k + 2 - cell.d:
        raise ValueError(f"perversity scale {s} outside 0..{cell.k + 2 - cell.d}")


def allowable_by_rows(cell: SymbolicCell, s: int) -> bool:
    """Row bounds ``k - i + 1 - s <= k_i <= k - i + 1`` for ``i = 1..d-3``."""
    _check_scale(cell, s)
    k = cell.k
    return all(k - i + 1 - s <= cell.rows[i - 1] <= k - i + 1 for i in range(1, cell.d - 2))


def allowable_by_codim(cell: SymbolicCell, s: int) -> bool:
    """Stratum test: codimension minus perversity bounded by the tail row sums."""
    _check_scale(cell, s)
    d, n = cell.d, cell.k + 3
    pert = perversity_pk(n, d, s)
    for c in range(2, d - 1):
        tail = sum(cell.rows[c - 2:])
        if codim_stratum(n, d, d - c) - pert[d - c] > tail:
            return False
    return True


def is_allowable(cell: SymbolicCell, s: int, method: str = "rows") -> bool:
    if method == "rows":
        return allowable_by_rows(cell, s)
    if method == "codim":
        return allowable_by_codim(cell, s)
    raise ValueError(f"unknown method {method!r}")


def lowered_cell(d: int, k: int, i0: int) -> SymbolicCell:
    """The cell whose rows from ``i0`` on are one shorter than in the top cell.

    ``i0 = d - 1`` names the top cell itself.
    """
    if i0 == d - 1:
        return top_cell(d, k)
    if not 1 <= i0 <= d - 3:
        raise ValueError(f"i0 must be in 1..{d - 3} or {d - 1}")
    rows = [k - i + 1 if i < i0 else k - i for i in range(1, d - 2)]
    return SymbolicCell(d, k, tuple(rows + [max(0, rows[-1] - 1)]))


def boundary_coefficient(d: int, k: int, i0: int) -> int:
    """Coefficient of the lowered cell ``i0 - 1`` in the boundary of cell ``i0``.

    It is ``1 + (-1)**l`` with ``l`` the length of row ``i0 - 1`` minus the
    length of the last row, both read in the target cell.
    """
    if i0 <= 1 or i0 == d - 1:
        return 0
    target = lowered_cell(d, k, i0 - 1)
    l = target.rows[i0 - 2] - target.rows[-1]
    return 1 + (-1) ** l


def p1_subcomplex(d: int, k: int) -> IntegerChainComplex:
    if d < 4:
        raise ValueError("d must be at least 4")
    if k < d - 1:
        raise ValueError(f"the scale-one perversity needs k >= d-1 (k={k}, d={d})")
    labels = list(range(1, d - 2)) + [d - 1]
    basis: dict[int, list] = {}
    for i0 in labels:
        basis.setdefault(lowered_cell(d, k, i0).dimension, []).append(i0)
    boundary = {}
    for i0 in range(2, d - 2):
        coeff = boundary_coefficient(d, k, i0)
        r = lowered_cell(d, k, i0).dimension
        boundary[r] = [[coeff]]
    return IntegerChainComplex(basis, boundary, {"d": d, "k": k, "s": 1})


def zero_perversity_complex(d: int, k: int) -> IntegerChainComplex:
    if d < 4 or k < d - 2:
        raise ValueError(f"zero perversity needs d >= 4 and k >= d-2 (k={k}, d={d})")
    cells = [c for c in enumerate_cells(d, k) if allowable_by_rows(c, 0)]
    basis: dict[int, list] = {}
    for c in cells:
        basis.setdefault(c.dimension, []).append(c.rows)
    return IntegerChainComplex(basis, {}, {"d": d, "k": k, "s": 0})


def printed_table(d: int) -> dict[int, HomologyGroup]:
    """The published scale-one table, indexed by codegree ``r``."""
    table = {0: HomologyGroup(1)}
    if d % 2:
        for r in range(3, d - 1, 2):
            table[r] = HomologyGroup(0, (2,))
    else:
        for l in range(1, (d - 4) // 2 + 1):
            table[2 * l] = HomologyGroup(0, (2,))
    return table


@dataclass(frozen=True)
class MorseDataTable:
    d: int
    k: int
    s: int
    top_dim: int
    groups: dict[int, HomologyGroup]
    notes: tuple[str, ...] = field(default=())

    @property
    def divergent(self) -> bool:
        return bool(self.notes)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "k": self.k,
            "s": self.s,
            "top_dim": self.top_dim,
            "groups": [{"r": r, **g.to_json()} for r, g in sorted(self.groups.items())],
            "notes": list(self.notes),
        }


def morse_data_table(d: int, k: int, s: int, warn: bool = True) -> MorseDataTable:
    """Nonzero groups of the Morse datum in degrees ``top - r``, keyed by ``r``."""
    if s not in (0, 1):
        raise ValueError("only perversity scales 0 and 1 are supported")
    cx = zero_perversity_complex(d, k) if s == 0 else p1_subcomplex(d, k)
    top = dim_moduli(k + 3, d)
    groups = {top - deg: g for deg, g in homology(cx).items() if not g.is_zero}
    notes: tuple[str, ...] = ()
    if s == 1 and groups != printed_table(d):
        notes = (
            f"d={d}: computed groups {_fmt(groups)} differ from the published "
            f"table {_fmt(printed_table(d))}; the computed table follows the cell boundaries",
        )
        if warn:
            warnings.warn(notes[0], PrintedTableDivergence, stacklevel=2)
    return MorseDataTable(d, k, s, top, dict(sorted(groups.items())), notes)


def _fmt(groups: dict[int, HomologyGroup]) -> str:
    return "{" + ", ".join(f"r={r}: {g}" for r, g in sorted(groups.items())) + "}"
