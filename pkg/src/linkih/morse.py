"""Critical spheres of the bending-energy function and the counts ``N_k``.

``N_k(l)`` is the number of critical submanifolds of index ``k(d-1)`` of the
perfected function; for ``d = 3`` it is the Betti number ``b_{2k}`` of the
planar-free moduli space.  The counts obey

    N_k(l) = N_k(l^-) + N_{k-1}(l^+) + #{critical spheres with multiple k}

with ``N = 0`` when the largest link is long and ``N = (1)`` for a nonempty
triangle.  Results are memoized per chamber.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterator

from .chambers import ChamberDescriptor, descriptor
from .exact import LengthVector, indices, popcount, require_generic, split_minus, split_plus


@dataclass(frozen=True)
class CriticalSphere:
    J: int
    index_multiple: int

    def index(self, d: int) -> int:
        return self.index_multiple * (d - 1)

    def to_json(self) -> dict:
        return {"J": list(indices(self.J)), "k": self.index_multiple}


@dataclass(frozen=True)
class BettiVector:
    counts: tuple[int, ...]

    @property
    def is_empty(self) -> bool:
        return not any(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.counts)

    def __len__(self) -> int:
        return len(self.counts)

    def __getitem__(self, k: int) -> int:
        return self.counts[k]

    def to_json(self) -> list[int]:
        return list(self.counts)


def _ordered_generic(ell) -> LengthVector:
    ell = require_generic(ell)
    if not ell.is_ordered():
        raise ValueError(f"{ell} is not ordered")
    return ell


def critical_spheres(ell) -> list[CriticalSphere]:
    """Subsets ``J`` of ``{1..n-2}`` with ``J+{n}`` short and ``J+{n-1,n}`` long."""
    ell = _ordered_generic(ell)
    n = ell.n
    if n < 4:
        return []
    signs = ell.margin_signs
    top = 1 << (n - 1)
    pair = top | (1 << (n - 2))
    out = []
    for J in range(1 << (n - 2)):
        if signs[J | top] < 0 and signs[J | pair] > 0:
            out.append(CriticalSphere(J, n - 3 - popcount(J)))
    return sorted(out, key=lambda s: (s.index_multiple, indices(s.J)))


_memo: dict[ChamberDescriptor, tuple[int, ...]] = {}
_memo_lock = threading.Lock()


def clear_cache() -> None:
    with _memo_lock:
        _memo.clear()


def _counts(ell: LengthVector) -> tuple[int, ...]:
    ell = ell.sorted()
    key = descriptor(ell)
    with _memo_lock:
        hit = _memo.get(key)
    if hit is not None:
        return hit
    n = ell.n
    if key.empty_flag:
        out = (0,) * (n - 2)
    elif n == 3:
        out = (1,)
    else:
        minus = _counts(split_minus(ell))
        plus = _counts(split_plus(ell))
        acc = list(minus) + [0]
        for k, c in enumerate(plus):
            acc[k + 1] += c
        for s in critical_spheres(ell):
            acc[s.index_multiple] += 1
        out = tuple(acc)
    with _memo_lock:
        _memo.setdefault(key, out)
    return out


def betti_counts(ell) -> BettiVector:
    ell = require_generic(ell)
    if ell.n < 3:
        raise ValueError("Betti counts need n >= 3")
    return BettiVector(_counts(ell))


def filtration(ell, d: int) -> list[int]:
    """Index multiples of all critical spheres, ascending (``N_k`` copies of ``k``)."""
    if d < 4:
        raise ValueError("filtration needs d >= 4")
    counts = betti_counts(ell)
    return [k for k, c in enumerate(counts) for _ in range(c)]
