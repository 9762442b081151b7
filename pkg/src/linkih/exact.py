"""Exact scalars, length vectors and the closed-form dimension data.

Length vectors carry entries of the form ``c0 + c1*e + c2*e**2 + ...`` where
``e`` is a positive infinitesimal.  This lets degenerate chamber
representatives such as ``(0, ..., 0, 1)`` and merged entries that cancel
exactly (``l_n - l_{n-1} = 0``) stay strictly positive without introducing
arbitrary small constants.

Subsets of ``{1, ..., n}`` are plain ``int`` bitmasks: index ``i`` lives in
bit ``i - 1``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, total_ordering
from math import lcm
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels

MAX_N = 20

__all__ = [
    "MAX_N",
    "EpsRational",
    "LengthVector",
    "SubsetClass",
    "NonGenericError",
    "Perversity",
    "mask",
    "indices",
    "complement",
    "popcount",
    "format_mask",
    "classify_subset",
    "is_generic",
    "median_subset",
    "dominating_index",
    "short_sets",
    "a_vector",
    "is_d_regular",
    "dim_moduli",
    "codim_stratum",
    "perversity_pk",
    "top_perversity",
    "merge",
    "split_minus",
    "split_plus",
]


# ---------------------------------------------------------------------------
# subset masks


def mask(idx: Iterable[int]) -> int:
    """Bitmask of a collection of 1-based indices."""
    m = 0
    for i in idx:
        if i < 1:
            raise ValueError(f"indices are 1-based, got {i}")
        m |= 1 << (i - 1)
    return m


def indices(m: int) -> tuple[int, ...]:
    """Sorted 1-based indices of a bitmask."""
    out = []
    i = 1
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return tuple(out)


def complement(m: int, n: int) -> int:
    return ((1 << n) - 1) & ~m


def popcount(m: int) -> int:
    return bin(m).count("1")


def format_mask(m: int) -> str:
    return "{" + ",".join(map(str, indices(m))) + "}"


# ---------------------------------------------------------------------------
# scalars


def _trim(coeffs: Iterable[Fraction]) -> tuple[Fraction, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@total_ordering
@dataclass(frozen=True)
class EpsRational:
    """Exact value ``c0 + c1*e + ... + cm*e**m`` for a positive infinitesimal ``e``.

    Ordering is lexicographic on the coefficient sequence, which is a total
    order compatible with addition.
    """

    coeffs: tuple[Fraction, ...] = ()

    def __init__(self, *coeffs) -> None:
        if len(coeffs) == 1 and isinstance(coeffs[0], (tuple, list)):
            coeffs = tuple(coeffs[0])
        object.__setattr__(self, "coeffs", _trim(Fraction(c) for c in coeffs))

    @classmethod
    def coerce(cls, value) -> EpsRational:
        if isinstance(value, EpsRational):
            return value
        if isinstance(value, str):
            return parse_scalar(value)
        return cls(value)

    @classmethod
    def eps(cls, order: int = 1) -> EpsRational:
        return cls(*([0] * order + [1]))

    @property
    def order(self) -> int:
        """Highest power of ``e`` carrying a nonzero coefficient (-1 for zero)."""
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if k < len(self.coeffs) else Fraction(0)

    def sign(self) -> int:
        for c in self.coeffs:
            if c:
                return 1 if c > 0 else -1
        return 0

    def is_positive(self) -> bool:
        return self.sign() > 0

    @property
    def real(self) -> Fraction:
        return self.coeff(0)

    def __add__(self, other):
        other = _as_eps(other)
        if other is NotImplemented:
            return other
        k = max(len(self.coeffs), len(other.coeffs))
        return EpsRational(*(self.coeff(i) + other.coeff(i) for i in range(k)))

    __radd__ = __add__

    def __neg__(self) -> EpsRational:
        return EpsRational(*(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _as_eps(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _as_eps(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, EpsRational):
            out = [Fraction(0)] * max(0, len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return EpsRational(*out)
        if isinstance(other, (int, Fraction)):
            return EpsRational(*(c * other for c in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        other = _as_eps(other)
        if other is NotImplemented:
            return False
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if len(self.coeffs) <= 1:
            return hash(self.real)
        return hash(self.coeffs)

    def __lt__(self, other) -> bool:
        other = _as_eps(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() < 0

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = [str(self.coeffs[0])]
        for k, c in enumerate(self.coeffs[1:], start=1):
            if not c:
                continue
            term = "e" if k == 1 else f"e^{k}"
            if c == 1:
                parts.append(f"+{term}")
            elif c == -1:
                parts.append(f"-{term}")
            else:
                parts.append(f"{'+' if c > 0 else '-'}{abs(c)}{term}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"EpsRational({str(self)!r})"

    def to_json(self) -> list[list[int]]:
        """Numerator/denominator pair per coefficient; zero is ``[[0, 1]]``."""
        return [[c.numerator, c.denominator] for c in (self.coeffs or (Fraction(0),))]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[int]]) -> EpsRational:
        return cls(*(Fraction(int(p), int(q)) for p, q in data))


def _as_eps(x):
    if isinstance(x, EpsRational):
        return x
    if isinstance(x, (int, Fraction)):
        return EpsRational(x)
    return NotImplemented


_SCALAR = re.compile(r"^\s*([+-]?\d+(?:/\d+)?)\s*((?:\+\s*e\s*)*)$")


def parse_scalar(text: str) -> EpsRational:
    """Parse ``"3/2"``, ``"0+e"`` or ``"1+e+e"`` (each ``+e`` adds one order of e)."""
    m = _SCALAR.match(text)
    if not m:
        raise ValueError(f"cannot parse length entry {text!r}")
    base = Fraction(m.group(1))
    orders = m.group(2).count("e")
    if not orders:
        return EpsRational(base)
    return EpsRational(*([base] + [0] * (orders - 1) + [1]))


# ---------------------------------------------------------------------------
# length vectors


class SubsetClass(enum.Enum):
    SHORT = "short"
    LONG = "long"
    MEDIAN = "median"


class NonGenericError(ValueError):
    """Raised when an operation needs a generic vector; carries a median subset."""

    def __init__(self, vector: LengthVector, median: int):
        self.vector = vector
        self.median = median
        super().__init__(
            f"length vector {vector} is not generic: median subset {format_mask(median)}"
        )


@dataclass(frozen=True)
class LengthVector:
    """Immutable vector of strictly positive exact lengths."""

    entries: tuple[EpsRational, ...]
    _sorted_perm: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __init__(self, entries: Iterable) -> None:
        ent = tuple(EpsRational.coerce(x) for x in entries)
        if not ent:
            raise ValueError("a length vector needs at least one entry")
        if len(ent) > MAX_N:
            raise ValueError(f"n = {len(ent)} exceeds the supported maximum {MAX_N}")
        for i, x in enumerate(ent, start=1):
            if not x.is_positive():
                raise ValueError(f"entry {i} = {x} is not positive")
        object.__setattr__(self, "entries", ent)
        # stable ascending sort, ties broken by original index
        perm = tuple(sorted(range(len(ent)), key=lambda i: (ent[i], i)))
        object.__setattr__(self, "_sorted_perm", perm)

    @classmethod
    def parse(cls, text: str) -> LengthVector:
        return cls(parse_scalar(t) for t in text.split(","))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[EpsRational]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> EpsRational:
        """1-based access, matching the subset index convention."""
        if not 1 <= i <= self.n:
            raise IndexError(i)
        return self.entries[i - 1]

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.entries) + ")"

    @property
    def total(self) -> EpsRational:
        return sum(self.entries, EpsRational())

    def subset_sum(self, m: int) -> EpsRational:
        return sum((self.entries[i - 1] for i in indices(m)), EpsRational())

    def is_ordered(self) -> bool:
        return all(a <= b for a, b in zip(self.entries, self.entries[1:]))

    def sorted(self) -> LengthVector:
        if self.is_ordered():
            return self
        return LengthVector(self.entries[i] for i in self._sorted_perm)

    @property
    def sort_permutation(self) -> tuple[int, ...]:
        """``sorted()[j]`` is ``self[perm[j] + 1]``."""
        return self._sorted_perm

    def permuted(self, perm: Sequence[int]) -> LengthVector:
        return LengthVector(self.entries[i] for i in perm)

    def scaled(self, factor) -> LengthVector:
        return LengthVector(x * Fraction(factor) for x in self.entries)

    @property
    def max_order(self) -> int:
        return max(x.order for x in self.entries)

    def integer_levels(self) -> list[list[int]]:
        """Per-order integer rows with the same lexicographic subset signs.

        Row ``k`` holds the ``e**k`` coefficients scaled by a positive common
        denominator for that row.
        """
        rows = []
        for k in range(self.max_order + 1):
            col = [x.coeff(k) for x in self.entries]
            den = lcm(*(c.denominator for c in col))
            rows.append([int(c * den) for c in col])
        return rows

    @cached_property
    def margin_signs(self) -> np.ndarray:
        """``signs[J] = sign(sum_J - sum_{J^c})`` for every bitmask ``J``."""
        return kernels.subset_margin_signs(self.integer_levels())

    def to_json(self) -> list:
        return [x.to_json() for x in self.entries]

    @classmethod
    def from_json(cls, data) -> LengthVector:
        return cls(EpsRational.from_json(x) for x in data)


def _as_vector(v) -> LengthVector:
    return v if isinstance(v, LengthVector) else LengthVector(v)


# ---------------------------------------------------------------------------
# classification


def classify_subset(ell, J: int) -> SubsetClass:
    ell = _as_vector(ell)
    if J >> ell.n:
        raise ValueError(f"subset {format_mask(J)} is not contained in 1..{ell.n}")
    s = (ell.subset_sum(J) - ell.subset_sum(complement(J, ell.n))).sign()
    if s < 0:
        return SubsetClass.SHORT
    if s > 0:
        return SubsetClass.LONG
    return SubsetClass.MEDIAN


def median_subset(ell) -> int | None:
    """A median subset if one exists, else ``None``.

    The reported subset contains the dominating index and is the smallest one
    by (size, indices), so messages are deterministic.
    """
    ell = _as_vector(ell)
    signs = ell.margin_signs
    zeros = np.flatnonzero(signs == 0)
    if zeros.size == 0:
        return None
    top = 1 << (dominating_index(ell) - 1)
    cands = [int(z) for z in zeros if int(z) & top]
    return min(cands, key=lambda m: (popcount(m), indices(m)))


def is_generic(ell) -> bool:
    return median_subset(ell) is None


def require_generic(ell) -> LengthVector:
    ell = _as_vector(ell)
    med = median_subset(ell)
    if med is not None:
        raise NonGenericError(ell, med)
    return ell


def dominating_index(ell) -> int:
    """Largest index attaining the maximum entry."""
    ell = _as_vector(ell)
    best = 1
    for i in range(2, ell.n + 1):
        if ell[i] >= ell[best]:
            best = i
    return best


def short_sets(ell, k: int) -> list[int]:
    """The family ``S_k``: short ``(k+1)``-subsets containing the dominating index."""
    ell = require_generic(ell)
    n = ell.n
    if not 0 <= k <= n - 3:
        raise ValueError(f"k must lie in 0..{n - 3}, got {k}")
    top = 1 << (dominating_index(ell) - 1)
    signs = ell.margin_signs
    return [m for m in range(1 << n) if m & top and popcount(m) == k + 1 and signs[m] < 0]


def a_vector(ell) -> list[int]:
    """``[|S_0|, |S_1|, ..., |S_{n-3}|]``."""
    ell = require_generic(ell)
    n = ell.n
    top = 1 << (dominating_index(ell) - 1)
    counts = [0] * max(n - 2, 0)
    signs = ell.margin_signs
    for m in np.flatnonzero(signs < 0):
        m = int(m)
        if m & top:
            c = popcount(m) - 1
            if c <= n - 3:
                counts[c] += 1
    return counts


def is_d_regular(ell, d: int) -> bool:
    """All long ``(d-1)``-subsets share a common index (vacuous when there are none)."""
    if d < 2:
        raise ValueError("d-regularity needs d >= 2")
    ell = _as_vector(ell)
    n = ell.n
    common = (1 << n) - 1
    signs = ell.margin_signs
    for m in np.flatnonzero(signs > 0):
        m = int(m)
        if popcount(m) == d - 1:
            common &= m
            if not common:
                return False
    return True


# ---------------------------------------------------------------------------
# dimension data


def _dim_formula(n: int, d: int) -> int:
    return (n - 3) * (d - 1) - (d - 2) * (d - 3) // 2


def _codim_formula(n: int, d: int, k: int) -> int:
    return k * (n - d) + k * (k - 1) // 2


def dim_moduli(n: int, d: int) -> int:
    """Dimension of the moduli space of ``n``-gons in ``R^d`` (needs ``n > d >= 3``)."""
    if d < 3:
        raise ValueError("the dimension formula needs d >= 3")
    if n <= d:
        raise ValueError(f"the dimension formula applies only to n > d (n={n}, d={d})")
    return _dim_formula(n, d)


def codim_stratum(n: int, d: int, k: int) -> int:
    """Codimension of the rank ``<= d-k`` stratum, ``2 <= k <= d-2``."""
    if not 2 <= k <= d - 2:
        raise ValueError(f"k must lie in 2..{d - 2}, got {k}")
    if n <= d:
        raise ValueError(f"the codimension formula applies only to n > d (n={n}, d={d})")
    return _codim_formula(n, d, k)


@dataclass(frozen=True)
class Perversity:
    """Perversity on the strata of a moduli space of ``n``-gons in ``R^d``.

    ``values[c - 2]`` is the value on the stratum of label ``c`` (codimension
    ``codim_stratum(n, d, c)``), ``c = 2, ..., d-2``.
    """

    n: int
    d: int
    values: tuple[int, ...]
    valid: bool = True

    def __post_init__(self) -> None:
        if len(self.values) != max(self.d - 3, 0):
            raise ValueError(f"expected {self.d - 3} values, got {len(self.values)}")

    def __getitem__(self, c: int) -> int:
        if not 2 <= c <= self.d - 2:
            raise KeyError(c)
        return self.values[c - 2]

    def as_dict(self) -> dict[int, int]:
        return {c: v for c, v in enumerate(self.values, start=2)}

    def __sub__(self, other: Perversity) -> tuple[int, ...]:
        if other.d != self.d:
            raise ValueError("perversities live on different stratifications")
        return tuple(a - b for a, b in zip(self.values, other.values))

    def satisfies_gm(self) -> bool:
        """Growth conditions for perversities on these strata.

        Non-decreasing, ``p(2) <= 2(n-d) - 1`` and ``p(i+1) - p(i) <= n-d+i``.
        """
        v, gap = self.values, self.n - self.d
        if not v:
            return True
        if any(x < 0 for x in v) or v[0] > 2 * gap - 1:
            return False
        for i in range(2, self.d - 2):
            step = self[i + 1] - self[i]
            if step < 0 or step > gap + i:
                return False
        return True


def perversity_pk(n: int, d: int, k: int) -> Perversity:
    """``c -> c*k`` on strata ``c = 2..d-2``; flagged valid iff ``k <= n-d-1``."""
    if d < 4:
        raise ValueError("perversities p_k need d >= 4")
    if k < 0:
        raise ValueError("k must be non-negative")
    return Perversity(n, d, tuple(c * k for c in range(2, d - 1)), valid=k <= n - d - 1)


def top_perversity(n: int, d: int) -> Perversity:
    if d < 4 or n <= d:
        raise ValueError("top perversity needs n > d >= 4")
    return Perversity(n, d, tuple(_codim_formula(n, d, c) - 2 for c in range(2, d - 1)))


# ---------------------------------------------------------------------------
# surgeries


def merge(ell, J: int) -> LengthVector:
    """Merge the links in ``J`` (which must avoid ``n``) into the last link."""
    ell = _as_vector(ell)
    n = ell.n
    if J >> (n - 1):
        raise ValueError(f"J = {format_mask(J)} must be a subset of 1..{n - 1}")
    rest = [ell[i] for i in range(1, n) if not (J >> (i - 1)) & 1]
    return LengthVector(rest + [ell[n] + ell.subset_sum(J)])


def _require_split_input(ell) -> LengthVector:
    ell = _as_vector(ell)
    if ell.n < 4:
        raise ValueError("splitting needs n >= 4")
    if not ell.is_ordered():
        raise ValueError(f"{ell} is not ordered")
    return ell


def split_minus(ell) -> LengthVector:
    """``(l_1, ..., l_{n-2}, l_n - l_{n-1})``; a vanishing difference becomes ``e**(m+1)``."""
    ell = _require_split_input(ell)
    diff = ell[ell.n] - ell[ell.n - 1]
    if diff.sign() == 0:
        diff = EpsRational.eps(ell.max_order + 1)
    return LengthVector(ell.entries[:-2] + (diff,))


def split_plus(ell) -> LengthVector:
    ell = _require_split_input(ell)
    return LengthVector(ell.entries[:-2] + (ell[ell.n] + ell[ell.n - 1],))
