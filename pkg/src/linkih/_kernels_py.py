"""Pure-Python subset-sum kernels.

Reference twins of the compiled routines in ``_ckernels.pyx``.  They work
with arbitrary-size integers, so they also serve as the overflow fallback.
"""

from __future__ import annotations

import numpy as np


def _level_margins(weights: list[int]) -> list[int]:
    # margins[J] = sum_J - sum_{J^c} = 2*sum_J - total, built by doubling
    margins = [-sum(weights)]
    for w in weights:
        w2 = 2 * w
        margins += [m + w2 for m in margins]
    return margins


def subset_margin_signs(levels) -> np.ndarray:
    levels = [[int(x) for x in row] for row in levels]
    n = len(levels[0])
    signs = [0] * (1 << n)
    undecided = list(range(1 << n))
    for row in levels:
        if not undecided:
            break
        margins = _level_margins(row)
        still = []
        for m in undecided:
            v = margins[m]
            if v:
                signs[m] = 1 if v > 0 else -1
            else:
                still.append(m)
        undecided = still
    return np.array(signs, dtype=np.int8)


def short_families(vectors) -> tuple[np.ndarray, np.ndarray]:
    rows = [[int(x) for x in row] for row in vectors]
    if not rows:
        return np.zeros((0, 0), dtype=np.uint8), np.zeros(0, dtype=bool)
    n = len(rows[0])
    half = 1 << (n - 1)
    flags = np.zeros((len(rows), half), dtype=np.uint8)
    generic = np.ones(len(rows), dtype=bool)
    for r, w in enumerate(rows):
        margins = _level_margins(w[:-1])
        top = w[-1]
        # margin(A + {n}) over all n entries = margin over the first n-1, plus top
        for a in range(half):
            v = margins[a] + top
            if v < 0:
                flags[r, a] = 1
            elif v == 0:
                generic[r] = False
    return flags, generic
