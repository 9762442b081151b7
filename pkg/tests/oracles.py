"""Independent reference implementations used to check the library.

Everything here is written from the definitions with plain loops over
``Fraction`` values, and shares no code with the package except where a
helper is explicitly named (the batch sampler reuses the subset kernel, which
is itself checked against :func:`brute_signs`).
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from linkih import kernels


# ---------------------------------------------------------------------------
# subsets by brute force


def lex(x) -> tuple[Fraction, ...]:
    """Coefficient tuple of a scalar (plain numbers become a 1-tuple)."""
    if hasattr(x, "coeffs"):
        return tuple(x.coeffs) or (Fraction(0),)
    return (Fraction(x),)


def lex_sign(coeffs: Iterable[Fraction]) -> int:
    for c in coeffs:
        if c:
            return 1 if c > 0 else -1
    return 0


def lex_add(a: Sequence[Fraction], b: Sequence[Fraction], sign: int = 1) -> tuple[Fraction, ...]:
    k = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (k - len(a))
    b = list(b) + [Fraction(0)] * (k - len(b))
    return tuple(x + sign * y for x, y in zip(a, b))


def brute_margin(values: Sequence, subset: Iterable[int]) -> int:
    """Sign of ``sum_J - sum_{J^c}`` for a 1-based index set ``J``."""
    subset = set(subset)
    acc: tuple[Fraction, ...] = (Fraction(0),)
    for i, v in enumerate(values, start=1):
        acc = lex_add(acc, lex(v), 1 if i in subset else -1)
    return lex_sign(acc)


def all_subsets(n: int) -> Iterable[frozenset[int]]:
    for r in range(n + 1):
        for c in itertools.combinations(range(1, n + 1), r):
            yield frozenset(c)


def brute_signs(values: Sequence) -> dict[frozenset[int], int]:
    return {J: brute_margin(values, J) for J in all_subsets(len(values))}


def brute_generic(values: Sequence) -> bool:
    return all(s != 0 for s in brute_signs(values).values())


def brute_dominating(values: Sequence) -> int:
    best = 1
    for i in range(2, len(values) + 1):
        if lex_sign(lex_add(lex(values[i - 1]), lex(values[best - 1]), -1)) >= 0:
            best = i
    return best


def brute_short_family(values: Sequence, k: int) -> set[frozenset[int]]:
    m = brute_dominating(values)
    n = len(values)
    return {
        frozenset(J)
        for J in itertools.combinations(range(1, n + 1), k + 1)
        if m in J and brute_margin(values, J) < 0
    }


def brute_a_vector(values: Sequence) -> list[int]:
    return [len(brute_short_family(values, k)) for k in range(len(values) - 2)]


def brute_regular(values: Sequence, d: int) -> bool:
    n = len(values)
    longs = [set(J) for J in itertools.combinations(range(1, n + 1), d - 1) if brute_margin(values, J) > 0]
    if not longs:
        return True
    return bool(set.intersection(*longs))


def brute_descriptor(values: Sequence) -> frozenset[frozenset[int]]:
    """Short subsets containing ``n`` of the sorted vector."""
    ordered = sorted(values, key=lex)
    n = len(ordered)
    return frozenset(J for J in all_subsets(n) if n in J and brute_margin(ordered, J) < 0)


# ---------------------------------------------------------------------------
# random vectors and the sampling oracle


def random_vector(rng: random.Random, n: int) -> list[int]:
    """Integer vector from a mix of distributions, so small chambers are hit too."""
    kind = rng.randrange(4)
    if kind == 0:
        return [rng.randint(1, 1000) for _ in range(n)]
    if kind == 1:
        return [max(1, int(math.exp(rng.uniform(0, math.log(10**6))))) for _ in range(n)]
    if kind == 2:
        # a few heavy links over a light background
        out = [rng.randint(1, 50) for _ in range(n)]
        for i in rng.sample(range(n), rng.randint(1, n)):
            out[i] = rng.randint(1, 10**4)
        return out
    base = rng.randint(1, 100)
    return [base + rng.randint(0, 3 * base) * (rng.random() < 0.5) + rng.randint(0, 9) for _ in range(n)]


def sample_descriptors(n: int, count: int, seed: int = 0, batch: int = 5000) -> tuple[set[frozenset[int]], int]:
    """Descriptors (sets of masks over the first ``n-1`` entries) of random generic vectors.

    Returns the distinct descriptors and how many samples were generic.
    """
    rng = random.Random(seed)
    seen: set[frozenset[int]] = set()
    generic_total = 0
    done = 0
    while done < count:
        size = min(batch, count - done)
        vecs = np.sort(np.array([random_vector(rng, n) for _ in range(size)], dtype=np.int64), axis=1)
        flags, generic = kernels.short_families(vecs)
        for row, ok in zip(flags, generic):
            if ok:
                generic_total += 1
                seen.add(frozenset(int(a) for a in np.flatnonzero(row)))
        done += size
    return seen, generic_total


# ---------------------------------------------------------------------------
# linear algebra


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    A = [list(map(int, r)) for r in matrix]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def bareiss_rank(matrix: Sequence[Sequence[int]]) -> int:
    A = [list(map(int, r)) for r in matrix]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    r, prev = 0, 1
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                A[i][j] = (A[i][j] * A[r][c] - A[i][c] * A[r][j]) // prev
            A[i][c] = 0
        prev = A[r][c]
        r += 1
        if r == rows:
            break
    return r


# ---------------------------------------------------------------------------
# closed forms and brute enumerations


def known_betti(a: Sequence[int], n: int) -> list[int]:
    """``b_{2k} = sum_{j<=k} (a_j - a_{n-2-j})`` with ``a_m = 0`` past ``n-3``."""
    ext = list(a) + [0] * 3

    def at(m: int) -> int:
        return ext[m] if 0 <= m <= n - 3 else 0

    return [sum(at(j) - at(n - 2 - j) for j in range(k + 1)) for k in range(n - 2)]


def brute_cells(d: int, k: int) -> list[tuple[int, ...]]:
    out = []
    for rows in itertools.product(range(k + 1), repeat=d - 2):
        ok = rows[0] <= k
        for i in range(1, d - 3):
            ok = ok and rows[i] <= max(0, rows[i - 1] - 1)
        ok = ok and rows[-1] == max(0, rows[-2] - 1)
        if ok:
            out.append(rows)
    return out


def brute_isomorphic(faces_a: set[frozenset[int]], faces_b: set[frozenset[int]]) -> bool:
    va = sorted({v for f in faces_a for v in f})
    vb = sorted({v for f in faces_b for v in f})
    if len(va) != len(vb) or len(faces_a) != len(faces_b):
        return False
    for perm in itertools.permutations(vb):
        phi = dict(zip(va, perm))
        if {frozenset(phi[v] for v in f) for f in faces_a} == faces_b:
            return True
    return False
