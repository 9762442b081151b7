"""Short-subset complexes and their exterior face rings.

For an ordered generic vector the faces are the subsets ``J`` of
``{1..n-1}`` with ``J + {n}`` short.  The exterior face ring has one basis
element ``Y_J`` per face, ``Y_J`` in degree ``|J|(d-1)``, and multiplication
``Y_J * Y_K = sign * Y_{J+K}`` when the union is a disjoint face and zero
otherwise.  Two such rings are isomorphic exactly when the complexes are, so
ring comparison goes through a complex isomorphism search.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .chambers import same_chamber
from .exact import (
    LengthVector,
    a_vector,
    format_mask,
    indices,
    is_d_regular,
    mask,
    popcount,
    require_generic,
)


class HypothesisWarning(UserWarning):
    """Inputs lie outside the range where the rank statements are proven."""


# ---------------------------------------------------------------------------
# complexes


@dataclass(frozen=True)
class FaceComplex:
    """Abstract simplicial complex stored as a set of vertex masks.

    The void complex has no faces at all; the empty complex has only the
    empty face.
    """

    faces: frozenset[int]
    n: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "faces", frozenset(int(f) for f in self.faces))
        for f in self.faces:
            for i in indices(f):
                if f & ~(1 << (i - 1)) not in self.faces:
                    raise ValueError(f"{format_mask(f)} is a face but a subface is not")

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[int]], n: int | None = None) -> FaceComplex:
        """Complex generated by the given faces (subfaces added)."""
        out: set[int] = set()
        for s in sets:
            m = mask(s)
            sub = m
            while True:
                out.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & m
        return cls(frozenset(out), n)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(indices(f)[0] for f in self.faces if popcount(f) == 1))

    @property
    def is_void(self) -> bool:
        return not self.faces

    def f_vector(self) -> tuple[int, ...]:
        """Face counts by size ``0, 1, 2, ...`` (size 0 is the empty face)."""
        if not self.faces:
            return ()
        top = max(popcount(f) for f in self.faces)
        counts = [0] * (top + 1)
        for f in self.faces:
            counts[popcount(f)] += 1
        return tuple(counts)

    def degree(self, v: int) -> int:
        b = 1 << (v - 1)
        return sum(1 for f in self.faces if f & b and popcount(f) == 2)

    def vertex_profile(self, v: int) -> tuple[int, ...]:
        """Face counts by size among faces through ``v``."""
        b = 1 << (v - 1)
        counts: dict[int, int] = {}
        for f in self.faces:
            if f & b:
                counts[popcount(f)] = counts.get(popcount(f), 0) + 1
        return tuple(counts.get(s, 0) for s in range(1, max(counts, default=0) + 1))

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(self.degree(v) for v in self.vertices))

    def sorted_faces(self) -> list[tuple[int, ...]]:
        return sorted((indices(f) for f in self.faces), key=lambda t: (len(t), t))

    def to_json(self) -> list[list[int]]:
        return [list(t) for t in self.sorted_faces()]


def short_complex(ell) -> FaceComplex:
    ell = require_generic(ell)
    if not ell.is_ordered():
        raise ValueError(f"{ell} is not ordered")
    n = ell.n
    top = 1 << (n - 1)
    neg = np.flatnonzero(ell.margin_signs < 0)
    return FaceComplex(frozenset(int(m) & ~top for m in neg if int(m) & top), n)


def complexes_isomorphic(A: FaceComplex, B: FaceComplex) -> bool:
    """Search for a vertex bijection carrying faces onto faces."""
    if A.f_vector() != B.f_vector() or A.degree_sequence() != B.degree_sequence():
        return False
    va, vb = A.vertices, B.vertices
    prof_a = {v: A.vertex_profile(v) for v in va}
    prof_b = {v: B.vertex_profile(v) for v in vb}
    if sorted(prof_a.values()) != sorted(prof_b.values()):
        return False
    # most constrained vertices first
    order = sorted(va, key=lambda v: (-A.degree(v), prof_a[v], v))
    faces_a = [f for f in A.faces if popcount(f) >= 2]
    faces_b = [f for f in B.faces if popcount(f) >= 2]

    def image(f: int, phi: Mapping[int, int]) -> int | None:
        out = 0
        for i in indices(f):
            if i not in phi:
                return None
            out |= 1 << (phi[i] - 1)
        return out

    def consistent(phi: dict[int, int], inv: dict[int, int], v: int, w: int) -> bool:
        bv, bw = 1 << (v - 1), 1 << (w - 1)
        for f in faces_a:
            if f & bv:
                g = image(f, phi)
                if g is not None and g not in B.faces:
                    return False
        for g in faces_b:
            if g & bw:
                f = image(g, inv)
                if f is not None and f not in A.faces:
                    return False
        return True

    def extend(pos: int, phi: dict[int, int], inv: dict[int, int]) -> bool:
        if pos == len(order):
            return True
        v = order[pos]
        for w in vb:
            if w in inv or prof_b[w] != prof_a[v]:
                continue
            phi[v], inv[w] = w, v
            if consistent(phi, inv, v, w) and extend(pos + 1, phi, inv):
                return True
            del phi[v], inv[w]
        return False

    return extend(0, {}, {})


# ---------------------------------------------------------------------------
# the ring


def shuffle_sign(J: int, K: int) -> int:
    """Sign of the permutation sorting the concatenation of ``J`` and ``K``."""
    inv = 0
    for k in indices(K):
        inv += popcount(J >> k)
    return -1 if inv % 2 else 1


@dataclass(frozen=True)
class RingElement:
    ring: FaceRing
    coefficients: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {int(f): Fraction(c) for f, c in self.coefficients.items() if c}
        for f in clean:
            if f not in self.ring.complex.faces:
                raise ValueError(f"{format_mask(f)} is not a face")
        object.__setattr__(self, "coefficients", clean)

    def _check(self, other: RingElement) -> None:
        if other.ring.complex != self.ring.complex:
            raise ValueError("elements live in different face rings")

    def __add__(self, other: RingElement) -> RingElement:
        self._check(other)
        out = dict(self.coefficients)
        for f, c in other.coefficients.items():
            out[f] = out.get(f, Fraction(0)) + c
        return RingElement(self.ring, out)

    def __neg__(self) -> RingElement:
        return RingElement(self.ring, {f: -c for f, c in self.coefficients.items()})

    def __sub__(self, other: RingElement) -> RingElement:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RingElement):
            return self.ring.multiply(self, other)
        return RingElement(self.ring, {f: c * Fraction(other) for f, c in self.coefficients.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring.complex == other.ring.complex and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(frozenset(self.coefficients.items()))

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def degrees(self) -> set[int]:
        return {self.ring.degree(f) for f in self.coefficients}

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for f in sorted(self.coefficients, key=lambda m: (popcount(m), indices(m))):
            c = self.coefficients[f]
            name = "1" if f == 0 else "Y" + "".join(map(str, indices(f)))
            terms.append(f"{c}*{name}" if c != 1 else name)
        return " + ".join(terms)


@dataclass(frozen=True)
class FaceRing:
    complex: FaceComplex
    d: int = 4

    def degree(self, face: int) -> int:
        return popcount(face) * (self.d - 1)

    def basis(self, J: Iterable[int] | int) -> RingElement:
        m = J if isinstance(J, int) else mask(J)
        return RingElement(self, {m: Fraction(1)})

    def one(self) -> RingElement:
        # the void complex gives the zero ring
        return self.zero() if self.complex.is_void else self.basis(0)

    def generator(self, i: int) -> RingElement:
        return self.basis(1 << (i - 1))

    def zero(self) -> RingElement:
        return RingElement(self, {})

    def multiply(self, x: RingElement, y: RingElement) -> RingElement:
        return multiply(x, y)

    def rank_in_degree(self, r: int) -> int:
        return sum(1 for f in self.complex.faces if popcount(f) == r)


def multiply(x: RingElement, y: RingElement) -> RingElement:
    x._check(y)
    faces = x.ring.complex.faces
    out: dict[int, Fraction] = {}
    for J, a in x.coefficients.items():
        for K, b in y.coefficients.items():
            if J & K or (J | K) not in faces:
                continue
            out[J | K] = out.get(J | K, Fraction(0)) + shuffle_sign(J, K) * a * b
    return RingElement(x.ring, out)


def face_ring(ell, d: int = 4) -> FaceRing:
    return FaceRing(short_complex(ell), d)


# ---------------------------------------------------------------------------
# rank statements


def _hypothesis_notes(ell: LengthVector, d: int) -> list[str]:
    notes = []
    if ell.n < d + 2:
        notes.append(f"n={ell.n} < d+2={d + 2}: outside the proven range")
    if not is_d_regular(ell, d):
        notes.append(f"{ell} is not {d}-regular")
    return notes


def graded_ranks(ell, d: int) -> tuple[int, ...]:
    """Ranks in degrees ``r(d-1)``, ``r = 0..n-3`` (even ``d`` only)."""
    if d % 2 or d < 4:
        raise ValueError(f"graded ranks are only available for even d >= 4, got {d}")
    ell = require_generic(ell).sorted()
    for note in _hypothesis_notes(ell, d):
        warnings.warn(note, HypothesisWarning, stacklevel=2)
    ring = face_ring(ell, d)
    return tuple(ring.rank_in_degree(r) for r in range(ell.n - 2))


class FirstRank(NamedTuple):
    rank: int
    coefficients: str


def first_ih_rank(ell, d: int) -> FirstRank:
    """Rank of the first nontrivial intersection homology group in the middle range.

    Odd ``d`` gives the integral rank ``1 + a_1``; even ``d`` gives the
    rational rank ``a_1`` and needs a d-regular vector.  For ``n < d + 2`` the
    value is still returned, with a :class:`HypothesisWarning`.
    """
    ell = require_generic(ell).sorted()
    if d < 4:
        raise ValueError("needs d >= 4")
    a = a_vector(ell)
    if not a or not a[0]:
        # empty moduli space
        return FirstRank(0, "Z" if d % 2 else "Q")
    if ell.n < 4:
        raise ValueError("needs n >= 4")
    if ell.n < d + 2:
        warnings.warn(f"n={ell.n} < d+2={d + 2}: outside the proven range", HypothesisWarning, stacklevel=2)
    a1 = a[1]
    if d % 2:
        return FirstRank(1 + a1, "Z")
    if not is_d_regular(ell, d):
        raise ValueError(f"{ell} is not {d}-regular")
    return FirstRank(a1, "Q")


@dataclass(frozen=True)
class Verdict:
    same_chamber: bool
    rings_isomorphic: bool
    consistent_with_theorem: bool
    hypotheses_hold: bool

    def to_json(self) -> dict:
        return {
            "same_chamber": self.same_chamber,
            "rings_isomorphic": self.rings_isomorphic,
            "consistent_with_theorem": self.consistent_with_theorem,
            "hypotheses_hold": self.hypotheses_hold,
        }


def distinguish(a, b, d: int) -> Verdict:
    a = require_generic(a).sorted()
    b = require_generic(b).sorted()
    same = a.n == b.n and same_chamber(a, b)
    iso = complexes_isomorphic(short_complex(a), short_complex(b))
    hyp = d >= 4 and d % 2 == 0 and a.n == b.n and is_d_regular(a, d) and is_d_regular(b, d)
    consistent = (iso or not same) and (not hyp or same == iso)
    return Verdict(same, iso, consistent, hyp)


@dataclass(frozen=True)
class RingPresentation:
    d: int
    n: int
    generator_degree: int
    truncation: int
    torsion: int | None
    text: str

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "generator_degree": self.generator_degree,
            "truncation": self.truncation,
            "torsion": self.torsion,
            "text": self.text,
        }


def shape_space_ring(d: int, n: int) -> RingPresentation:
    """Known presentation for the vector ``(1, ..., 1, n-2)``."""
    if d % 2:
        if d < 3 or n <= d:
            raise ValueError(f"needs odd d >= 3 and n > d (d={d}, n={n})")
        k = n - d
        text = f"Z[X]/(X^{k})" + (" = Z" if k == 1 else "")
        return RingPresentation(d, n, d - 1, k, None, text)
    if d == 4:
        if n < 5:
            raise ValueError(f"needs n >= 5 (n={n})")
        return RingPresentation(d, n, 3, n - 4, 2, f"Z[X]/(X^{n - 4}, 2X)")
    raise NotImplementedError(f"no presentation is known for even d={d} >= 6")


def span_rank(elements: Iterable[RingElement]) -> int:
    """Rank over Q of a family of ring elements."""
    rows = [dict(e.coefficients) for e in elements]
    faces = sorted({f for r in rows for f in r})
    mat = [[r.get(f, Fraction(0)) for f in faces] for r in rows]
    rank = 0
    col = 0
    while rank < len(mat) and col < len(faces):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if piv is None:
            col += 1
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                q = mat[i][col] / mat[rank][col]
                mat[i] = [x - q * y for x, y in zip(mat[i], mat[rank])]
        rank += 1
        col += 1
    return rank


def products_of_generators(ring: FaceRing, r: int) -> list[RingElement]:
    """All products of ``r`` distinct vertex generators, in increasing order."""
    out = []
    for combo in combinations(ring.complex.vertices, r):
        x = ring.one()
        for v in combo:
            x = x * ring.generator(v)
        out.append(x)
    return out
