"""Chambers of generic length vectors, up to permutation.

A chamber is recorded by the family of short subsets containing the last
index of the ordered vector.  Subsets ``J`` of ``{1..n-1}`` carry the
dominance order (``A <= B`` when ``|A| <= |B|`` and the descending entries of
``A`` are bounded by those of ``B``); for an ordered vector, ``J + {n}`` short
and ``A <= J`` force ``A + {n}`` short.  Enumeration walks this order with a
depth-first search and decides each branch with an exact LP.
"""

from __future__ import annotations

import functools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .exact import (
    LengthVector,
    SubsetClass,
    classify_subset,
    dominating_index,
    format_mask,
    indices,
    is_d_regular,
    mask,
    popcount,
    require_generic,
)
from .simplex import minimize

MIN_ENUM_N = 4
MAX_ENUM_N = 8


# ---------------------------------------------------------------------------
# dominance order on subsets of {1..n-1}


def _lower_moves(rest: int) -> Iterable[int]:
    """Generators of the order below ``rest``: drop an element, or shift one down."""
    for i in indices(rest):
        b = 1 << (i - 1)
        yield rest & ~b
        if i > 1 and not rest & (b >> 1):
            yield rest ^ b ^ (b >> 1)


def _upper_moves(rest: int, n: int) -> Iterable[int]:
    for j in range(1, n):
        b = 1 << (j - 1)
        if not rest & b:
            yield rest | b
        elif j + 1 <= n - 1 and not rest & (b << 1):
            yield rest ^ b ^ (b << 1)


def dominated(a: Iterable[int], b: Iterable[int]) -> bool:
    """Dominance test on index collections (elements of ``{1..n-1}``)."""
    sa = sorted(a, reverse=True)
    sb = sorted(b, reverse=True)
    return len(sa) <= len(sb) and all(x <= y for x, y in zip(sa, sb))


def _linear_order(n: int) -> list[int]:
    # index sum strictly grows along every generator, so this is a linear extension
    return sorted(range(1 << (n - 1)), key=lambda r: (sum(indices(r)), popcount(r), indices(r)))


# ---------------------------------------------------------------------------
# descriptors


@dataclass(frozen=True)
class ChamberDescriptor:
    """Short subsets containing ``n`` of an ordered generic vector.

    ``shorts`` holds full masks over ``{1..n}``; each one has bit ``n`` set.
    """

    n: int
    shorts: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "shorts", frozenset(int(m) for m in self.shorts))
        top = 1 << (self.n - 1)
        for m in self.shorts:
            if not m & top or m >> self.n:
                raise ValueError(f"{format_mask(m)} is not a subset of 1..{self.n} containing {self.n}")

    @property
    def empty_flag(self) -> bool:
        return not self.shorts

    @property
    def top(self) -> int:
        return 1 << (self.n - 1)

    def rests(self) -> frozenset[int]:
        return frozenset(m & ~self.top for m in self.shorts)

    def family(self, k: int) -> list[int]:
        return sorted((m for m in self.shorts if popcount(m) == k + 1), key=indices)

    def a_vector(self) -> list[int]:
        counts = [0] * max(self.n - 2, 0)
        for m in self.shorts:
            if popcount(m) - 1 < len(counts):
                counts[popcount(m) - 1] += 1
        return counts

    def sorted_sets(self) -> list[tuple[int, ...]]:
        return sorted(indices(m) for m in self.shorts)

    @property
    def id(self) -> str:
        if not self.shorts:
            return "empty"
        return "|".join(format_mask(mask(t)) for t in self.sorted_sets())

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> ChamberDescriptor:
        return cls(n, frozenset(mask(s) for s in sets))

    @classmethod
    def from_id(cls, n: int, text: str) -> ChamberDescriptor:
        text = text.strip()
        if text == "empty":
            return cls(n)
        sets = []
        for part in text.split("|"):
            part = part.strip()
            if not (part.startswith("{") and part.endswith("}")):
                raise ValueError(f"bad chamber id component {part!r}")
            body = part[1:-1].strip()
            sets.append([int(x) for x in body.split(",")] if body else [])
        return cls.from_sets(n, sets)

    def sort_key(self) -> tuple:
        return (len(self.shorts), self.sorted_sets())

    def to_json(self) -> dict:
        return {"n": self.n, "shorts": [list(t) for t in self.sorted_sets()]}

    def __str__(self) -> str:
        return self.id


def descriptor(ell) -> ChamberDescriptor:
    """Descriptor of the sorted form of a generic vector."""
    ell = require_generic(ell).sorted()
    n = ell.n
    top = 1 << (n - 1)
    neg = np.flatnonzero(ell.margin_signs < 0)
    return ChamberDescriptor(n, frozenset(int(m) for m in neg if int(m) & top))


def same_chamber(a, b) -> bool:
    da, db = descriptor(a), descriptor(b)
    return da == db


def is_empty_moduli(ell) -> bool:
    ell = require_generic(ell)
    m = dominating_index(ell)
    return classify_subset(ell, 1 << (m - 1)) is SubsetClass.LONG


def is_downward_closed(desc: ChamberDescriptor) -> bool:
    rests = desc.rests()
    return all(low in rests for r in rests for low in _lower_moves(r))


def regular_for(ell) -> list[int]:
    """All ``d`` in ``2..n-1`` for which ``ell`` is d-regular."""
    ell = LengthVector(ell) if not isinstance(ell, LengthVector) else ell
    return [d for d in range(2, ell.n) if is_d_regular(ell, d)]


# ---------------------------------------------------------------------------
# realizability


def _constraint(n: int, rest: int, short: bool) -> tuple[list[int], int]:
    """LP row for ``rest + {n}`` being short (or long) with margin at least one.

    Variables are the increments ``u_j >= 0`` of ``l_j = 1 + u_1 + ... + u_j``.
    """
    full = rest | (1 << (n - 1))
    sign = [(-1 if (full >> (i - 1)) & 1 else 1) for i in range(1, n + 1)]
    if not short:
        sign = [-s for s in sign]
    tail = 0
    row = [0] * n
    for j in range(n, 0, -1):
        tail += sign[j - 1]
        row[j - 1] = tail
    return row, 1 - sum(sign)


def _solve(n: int, short_rests: Sequence[int], long_rests: Sequence[int]) -> tuple[Fraction, ...] | None:
    rows, rhs = [], []
    for r in short_rests:
        g, h = _constraint(n, r, True)
        rows.append(g)
        rhs.append(h)
    for r in long_rests:
        g, h = _constraint(n, r, False)
        rows.append(g)
        rhs.append(h)
    cost = [n - j for j in range(n)]
    sol = minimize(cost, rows, rhs)
    if sol is None:
        return None
    ell, acc = [], Fraction(1)
    for u in sol.x:
        acc += u
        ell.append(acc)
    return tuple(ell)


def _integral(ell: Sequence[Fraction]) -> LengthVector:
    den = math.lcm(*(x.denominator for x in ell))
    ints = [int(x * den) for x in ell]
    g = math.gcd(*ints)
    return LengthVector([v // g for v in ints])


def _antichains(n: int, rests: frozenset[int]) -> tuple[list[int], list[int]]:
    universe = range(1 << (n - 1))
    maximal = [r for r in rests if not any(u in rests for u in _upper_moves(r, n))]
    minimal = [r for r in universe if r not in rests and all(low in rests for low in _lower_moves(r))]
    return sorted(maximal), sorted(minimal)


def realizable(desc: ChamberDescriptor, reduce: bool = True) -> LengthVector | None:
    """An ordered integral vector with descriptor ``desc``, or ``None`` if the chamber is empty.

    The LP fixes every margin to be at least one and minimizes the total
    length, so the answer is deterministic and small.  Families that are not
    downward closed are never realized by an ordered vector.  With
    ``reduce=False`` the LP sees one constraint per subset instead of the two
    antichains, and the closure shortcut is skipped.
    """
    n = desc.n
    if reduce:
        if not is_downward_closed(desc):
            return None
        shorts, longs = _antichains(n, desc.rests())
    else:
        rests = desc.rests()
        shorts = sorted(rests)
        longs = [r for r in range(1 << (n - 1)) if r not in rests]
    ell = _solve(n, shorts, longs)
    return None if ell is None else _integral(ell)


# ---------------------------------------------------------------------------
# enumeration


class _Node(NamedTuple):
    pos: int
    shorts: frozenset[int]
    longs: frozenset[int]
    max_short: tuple[int, ...]
    min_long: tuple[int, ...]
    witness: tuple[Fraction, ...]


def _margin(n: int, witness: Sequence[Fraction], rest: int) -> Fraction:
    """Complement sum minus subset sum for ``rest + {n}``."""
    full = rest | (1 << (n - 1))
    return sum((-x if (full >> i) & 1 else x) for i, x in enumerate(witness))


def _expand(n: int, order: Sequence[int], node: _Node) -> tuple[frozenset[int] | None, list[_Node]]:
    """Resolve forced sets, then branch; returns ``(leaf_family, children)``."""
    pos, shorts, longs = node.pos, set(node.shorts), set(node.longs)
    min_long = list(node.min_long)
    while pos < len(order):
        r = order[pos]
        if any(low in longs for low in _lower_moves(r)):
            longs.add(r)
            pos += 1
            continue
        break
    if pos == len(order):
        return frozenset(shorts), []

    r = order[pos]
    children = []
    margin = _margin(n, node.witness, r)

    new_max = tuple(m for m in node.max_short if not dominated(indices(m), indices(r))) + (r,)
    wit = node.witness if margin > 0 else _solve(n, new_max, min_long)
    if wit is not None:
        children.append(_Node(pos + 1, frozenset(shorts | {r}), frozenset(longs), new_max, tuple(min_long), wit))

    new_min = tuple(min_long) + (r,)
    wit = node.witness if margin < 0 else _solve(n, node.max_short, new_min)
    if wit is not None:
        children.append(_Node(pos + 1, frozenset(shorts), frozenset(longs | {r}), node.max_short, new_min, wit))
    return None, children


def _search(n: int, root: _Node) -> list[frozenset[int]]:
    order = _linear_order(n)
    leaves = []
    stack = [root]
    while stack:
        leaf, children = _expand(n, order, stack.pop())
        if leaf is not None:
            leaves.append(leaf)
        stack.extend(reversed(children))
    return leaves


def _root(n: int) -> _Node:
    # (1, ..., 1, n) has every set containing n long; any start witness works
    witness = tuple(Fraction(1) for _ in range(n - 1)) + (Fraction(n),)
    return _Node(0, frozenset(), frozenset(), (), (), witness)


def _frontier(n: int, size: int) -> tuple[list[frozenset[int]], list[_Node]]:
    order = _linear_order(n)
    leaves: list[frozenset[int]] = []
    nodes = [_root(n)]
    while nodes and len(nodes) < size:
        nxt = []
        for node in nodes:
            leaf, children = _expand(n, order, node)
            if leaf is not None:
                leaves.append(leaf)
            nxt.extend(children)
        nodes = nxt
    return leaves, nodes


def _search_many(n: int, nodes: list[_Node]) -> list[frozenset[int]]:
    out = []
    for node in nodes:
        out.extend(_search(n, node))
    return out


@functools.lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple[tuple[ChamberDescriptor, LengthVector], ...]:
    return _finish(n, _search(n, _root(n)))


def _finish(n: int, families: Iterable[frozenset[int]]) -> tuple[tuple[ChamberDescriptor, LengthVector], ...]:
    top = 1 << (n - 1)
    seen = {ChamberDescriptor(n, frozenset(r | top for r in fam)) for fam in families}
    out = []
    for desc in sorted(seen, key=ChamberDescriptor.sort_key):
        rep = realizable(desc)
        if rep is None:
            raise AssertionError(f"search produced an infeasible family {desc.id}")
        out.append((desc, rep))
    return tuple(out)


def enumerate_chambers(n: int, workers: int = 1) -> list[tuple[ChamberDescriptor, LengthVector]]:
    """All chambers for ``n`` links up to permutation, with integral representatives.

    With ``workers > 1`` the search tree is cut at a frontier and the subtrees
    are explored in a process pool; the result is identical either way.
    """
    if not MIN_ENUM_N <= n <= MAX_ENUM_N:
        raise ValueError(f"enumeration supports {MIN_ENUM_N} <= n <= {MAX_ENUM_N}, got {n}")
    if workers <= 1:
        return list(_enumerate(n))
    leaves, nodes = _frontier(n, 4 * workers)
    chunks = [nodes[i::workers] for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_search_many, [n] * workers, chunks):
            leaves.extend(part)
    return list(_finish(n, leaves))


def regular_chambers(n: int, d: int, workers: int = 1) -> list[tuple[ChamberDescriptor, LengthVector]]:
    return [(desc, rep) for desc, rep in enumerate_chambers(n, workers) if is_d_regular(rep, d)]
