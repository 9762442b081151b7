from __future__ import annotations

import warnings

import pytest
from oracles import brute_cells

from linkih.exact import dim_moduli
from linkih.ihchain import (
    PrintedTableDivergence,
    SymbolicCell,
    allowable_by_codim,
    allowable_by_rows,
    boundary_coefficient,
    enumerate_cells,
    is_allowable,
    lowered_cell,
    morse_data_table,
    p1_subcomplex,
    printed_table,
    top_cell,
)
from linkih.snf import HomologyGroup, homology

Z = HomologyGroup(1)
Z2 = HomologyGroup(0, (2,))


def test_cell_examples():
    cells = enumerate_cells(4, 3)
    assert [c.rows for c in cells] == [(0, 0), (1, 0), (2, 1), (3, 2)]
    assert [c.dimension for c in cells] == [3, 4, 6, 8]
    assert [(c.rows, c.dimension) for c in enumerate_cells(4, 1)] == [((0, 0), 1), ((1, 0), 2)]
    top = enumerate_cells(6, 5)[-1]
    assert top.rows == (5, 4, 3, 2) and top.dimension == 19 == dim_moduli(8, 6)


@pytest.mark.parametrize("rows", [(4, 0), (1, 1), (2, 0), (1, 1, 0, 0)])
def test_invalid_cells_rejected(rows):
    with pytest.raises(ValueError):
        SymbolicCell(4 if len(rows) == 2 else 6, 3, rows)


@pytest.mark.parametrize("d", range(4, 9))
def test_enumeration_is_exact(d):
    for k in range(1, d + 5):
        cells = enumerate_cells(d, k)
        assert sorted(c.rows for c in cells) == sorted(brute_cells(d, k))
        assert len({c.rows for c in cells}) == len(cells)
        if k >= d - 2:
            assert max(c.dimension for c in cells) == dim_moduli(k + 3, d)
            assert cells[-1] == top_cell(d, k)


@pytest.mark.parametrize("d", range(4, 9))
def test_allowability_routes_agree(d):
    for k in range(d - 2, d + 5):
        for s in range(0, k + 3 - d):
            for c in enumerate_cells(d, k):
                assert allowable_by_rows(c, s) == allowable_by_codim(c, s)


def test_allowability_examples():
    assert [c.rows for c in enumerate_cells(4, 3) if is_allowable(c, 1)] == [(2, 1), (3, 2)]
    assert len([c for c in enumerate_cells(6, 5) if is_allowable(c, 1, method="codim")]) == 4
    for d in range(4, 9):
        for k in range(d - 2, d + 4):
            assert [c for c in enumerate_cells(d, k) if is_allowable(c, 0)] == [top_cell(d, k)]
    with pytest.raises(ValueError):
        is_allowable(top_cell(4, 3), 2)
    with pytest.raises(ValueError):
        is_allowable(top_cell(4, 3), 0, method="other")


@pytest.mark.parametrize("d", range(4, 9))
def test_scale_one_cells_are_the_lowered_cells(d):
    for k in range(d - 1, d + 5):
        allowed = sorted(c for c in enumerate_cells(d, k) if allowable_by_rows(c, 1))
        lowered = sorted(lowered_cell(d, k, i) for i in list(range(1, d - 2)) + [d - 1])
        assert allowed == lowered
        assert len(allowed) == d - 2
        top = dim_moduli(k + 3, d)
        for i in list(range(1, d - 2)) + [d - 1]:
            assert lowered_cell(d, k, i).dimension == top - (d - 1 - i)


def test_boundary_examples():
    cx = p1_subcomplex(5, 4)
    top = dim_moduli(7, 5)
    assert cx.basis == {top: [4], top - 2: [2], top - 3: [1]}
    assert cx.matrix(top - 2) == [[2]]
    assert boundary_coefficient(5, 4, 1) == 0 and boundary_coefficient(5, 4, 4) == 0
    four = p1_subcomplex(4, 3)
    assert all(v == 0 for m in four.boundary.values() for row in m for v in row)
    assert [boundary_coefficient(7, 6, i) for i in (4, 3, 2)] == [2, 0, 2]


def test_boundary_exponent_reading():
    # l counts row i0-1 against the last row of the target cell: d - 1 - i0
    for d in range(5, 10):
        for i0 in range(2, d - 2):
            target = lowered_cell(d, d - 1, i0 - 1)
            assert target.rows[i0 - 2] - target.rows[-1] == d - 1 - i0
            assert boundary_coefficient(d, d - 1, i0) == 1 + (-1) ** (d - 1 - i0)
        # top boundary into the last lowered cell is 2, and the bottom one is 2 iff d is odd
        assert boundary_coefficient(d, d - 1, d - 3) == 2
        assert boundary_coefficient(d, d - 1, 2) == (2 if d % 2 else 0)


def test_p1_needs_large_k():
    with pytest.raises(ValueError):
        p1_subcomplex(5, 3)
    with pytest.raises(ValueError):
        morse_data_table(5, 2, 0)
    with pytest.raises(ValueError):
        morse_data_table(5, 4, 2)


def test_homology_of_p1_complexes():
    top = dim_moduli(7, 5)
    assert homology(p1_subcomplex(5, 4)) == {top: Z, top - 2: HomologyGroup(), top - 3: Z2}
    for d in range(4, 9):
        for k in range(d - 1, d + 4):
            assert p1_subcomplex(d, k).is_complex()


def test_tables():
    assert morse_data_table(5, 4, 1).groups == {0: Z, 3: Z2}
    with pytest.warns(PrintedTableDivergence):
        t = morse_data_table(4, 3, 1)
    assert t.groups == {0: Z, 2: Z} and t.divergent
    assert morse_data_table(6, 5, 0).groups == {0: Z}
    assert morse_data_table(5, 4, 1).to_json()["groups"] == [
        {"r": 0, "free": 1, "torsion": []},
        {"r": 3, "free": 0, "torsion": [2]},
    ]


def test_tables_are_stable_in_k():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PrintedTableDivergence)
        for d in range(4, 9):
            ref = morse_data_table(d, d - 1, 1).groups
            for k in range(d, d + 5):
                assert morse_data_table(d, k, 1).groups == ref
            # the codegree d-2 group feeds the first rank computation
            assert ref.get(d - 2) == (Z2 if d % 2 else Z)


def test_printed_table_agrees_for_odd_d_only():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PrintedTableDivergence)
        for d in range(4, 10):
            t = morse_data_table(d, d - 1, 1, warn=False)
            assert (t.groups == printed_table(d)) == (d % 2 == 1)
