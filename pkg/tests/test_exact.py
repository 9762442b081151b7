from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from conftest import generic_vectors, int_vectors
from hypothesis import given
from hypothesis import strategies as st
from oracles import (
    brute_a_vector,
    brute_dominating,
    brute_margin,
    brute_regular,
    brute_short_family,
)

from linkih.exact import (
    EpsRational,
    LengthVector,
    NonGenericError,
    SubsetClass,
    a_vector,
    classify_subset,
    codim_stratum,
    dim_moduli,
    dominating_index,
    indices,
    is_d_regular,
    is_generic,
    mask,
    median_subset,
    merge,
    parse_scalar,
    perversity_pk,
    require_generic,
    short_sets,
    split_minus,
    split_plus,
    top_perversity,
)

L = LengthVector


# --- scalars ---------------------------------------------------------------


def test_eps_ordering_is_lexicographic():
    e = EpsRational.eps()
    assert EpsRational(0) < e < EpsRational(Fraction(1, 10**9))
    assert e * e < e
    assert EpsRational(1) + e > EpsRational(1)
    assert EpsRational(1) - e < 1
    assert (e - e).sign() == 0


@pytest.mark.parametrize(
    "text, coeffs",
    [("3/2", (Fraction(3, 2),)), ("0+e", (0, 1)), ("1+e+e", (1, 0, 1)), (" 7 ", (7,))],
)
def test_parse_scalar(text, coeffs):
    assert parse_scalar(text) == EpsRational(*coeffs)


@pytest.mark.parametrize("bad", ["", "x", "1.5", "1+f", "e"])
def test_parse_scalar_rejects(bad):
    with pytest.raises(ValueError):
        parse_scalar(bad)


@given(st.lists(st.fractions(), min_size=1, max_size=4), st.lists(st.fractions(), min_size=1, max_size=4))
def test_eps_arithmetic_matches_coefficientwise(a, b):
    x, y = EpsRational(*a), EpsRational(*b)
    k = max(len(a), len(b))
    pad = lambda v: list(v) + [Fraction(0)] * (k - len(v))  # noqa: E731
    assert (x + y) == EpsRational(*[p + q for p, q in zip(pad(a), pad(b))])
    assert (x < y) == (tuple(pad(a)) < tuple(pad(b)))
    assert EpsRational.from_json(x.to_json()) == x


# --- vectors ---------------------------------------------------------------


def test_vector_rejects_nonpositive_and_oversize():
    with pytest.raises(ValueError):
        L([1, 0, 2])
    with pytest.raises(ValueError):
        L([1, -1])
    with pytest.raises(ValueError):
        L([1] * 21)


def test_vector_roundtrips_json_and_text():
    v = L.parse("1,3/2,2+e")
    assert L.from_json(v.to_json()) == v
    assert str(v) == "(1,3/2,2+e)"
    assert v[3] == EpsRational(2, 1)


def test_sorted_is_stable():
    v = L([3, 1, 2, 1])
    assert v.sorted() == L([1, 1, 2, 3])
    assert v.sort_permutation == (1, 3, 2, 0)


# --- classification --------------------------------------------------------


@pytest.mark.parametrize(
    "vec, J, expected",
    [
        ((1, 1, 1, 2), {4}, SubsetClass.SHORT),
        ((1, 1, 1, 2), {1, 4}, SubsetClass.LONG),
        ((1, 1, 2), {3}, SubsetClass.MEDIAN),
        ((2, 4, 4, 5), {1, 4}, SubsetClass.SHORT),
        ((2, 4, 4, 5), {3, 4}, SubsetClass.LONG),
    ],
)
def test_classify_examples(vec, J, expected):
    assert classify_subset(L(vec), mask(J)) is expected


def test_median_reported_with_dominating_index():
    with pytest.raises(NonGenericError) as info:
        require_generic(L([1, 1, 2]))
    assert indices(info.value.median) == (3,)
    assert "median subset {3}" in str(info.value)
    assert median_subset(L([1, 1, 1, 1])) == mask({1, 4})


def test_short_sets_example():
    assert [indices(m) for m in short_sets(L([1, 1, 1, 1, 1, 2]), 1)] == [(1, 6), (2, 6), (3, 6), (4, 6), (5, 6)]
    assert short_sets(L([1, 1, 1, 1, 1, 2]), 2) == []


def test_dominating_index_prefers_largest_tied_index():
    assert dominating_index(L([3, 1, 3])) == 3
    assert dominating_index(L([5, 1, 2])) == 1


@given(int_vectors())
def test_classification_matches_brute_force(vec):
    v = L(vec)
    for J in range(1 << len(vec)):
        s = brute_margin(vec, indices(J))
        expected = {-1: SubsetClass.SHORT, 1: SubsetClass.LONG, 0: SubsetClass.MEDIAN}[s]
        assert classify_subset(v, J) is expected


@given(int_vectors())
def test_complement_swaps_short_and_long(vec):
    v = L(vec)
    full = (1 << v.n) - 1
    flip = {SubsetClass.SHORT: SubsetClass.LONG, SubsetClass.LONG: SubsetClass.SHORT, SubsetClass.MEDIAN: SubsetClass.MEDIAN}
    for J in range(1 << v.n):
        assert classify_subset(v, full ^ J) is flip[classify_subset(v, J)]


@given(generic_vectors())
def test_families_and_regularity_match_brute_force(vec):
    v = L(vec)
    assert is_generic(v)
    assert dominating_index(v) == brute_dominating(vec)
    assert a_vector(v) == brute_a_vector(vec)
    for k in range(len(vec) - 2):
        assert {frozenset(indices(m)) for m in short_sets(v, k)} == brute_short_family(vec, k)
    for d in range(2, len(vec) + 1):
        assert is_d_regular(v, d) == brute_regular(vec, d)


@given(generic_vectors(), st.randoms())
def test_invariants_are_permutation_invariant(vec, rnd):
    perm = list(vec)
    rnd.shuffle(perm)
    assert a_vector(L(vec)) == a_vector(L(perm))
    assert all(is_d_regular(L(vec), d) == is_d_regular(L(perm), d) for d in range(2, len(vec)))


@given(generic_vectors(min_n=4))
def test_every_vector_is_two_regular(vec):
    assert is_d_regular(L(vec), 2)


def test_regularity_examples():
    assert is_d_regular(L([1, 1, 1, 1, 1, 2]), 4)
    assert not is_d_regular(L([1, 1, 1, 2]), 4)
    # ordered form: d-regular iff {n-d+1..n-1} is not long
    v = L([1, 2, 3, 4, 5, 6, 8])
    for d in range(3, 7):
        top = set(range(v.n - d + 1, v.n))
        assert is_d_regular(v, d) == (classify_subset(v, mask(top)) is not SubsetClass.LONG)


# --- formulas --------------------------------------------------------------


@pytest.mark.parametrize("n, d, dim", [(6, 4, 8), (7, 5, 13), (8, 6, 19), (4, 3, 2), (5, 3, 4)])
def test_dim_moduli(n, d, dim):
    assert dim_moduli(n, d) == dim


def test_dim_moduli_small_d_is_twice_n_minus_3_for_planar_free():
    for n in range(4, 12):
        assert dim_moduli(n, 3) == 2 * (n - 3)


def test_formula_preconditions():
    with pytest.raises(ValueError):
        dim_moduli(4, 4)
    with pytest.raises(ValueError):
        dim_moduli(6, 2)
    with pytest.raises(ValueError):
        codim_stratum(8, 6, 1)
    with pytest.raises(ValueError):
        codim_stratum(8, 6, 5)
    with pytest.raises(ValueError):
        codim_stratum(5, 6, 2)


def test_codim_values():
    assert codim_stratum(8, 6, 2) == 5
    assert codim_stratum(8, 6, 4) == 14
    for n, d in itertools.product(range(6, 12), range(4, 8)):
        if n > d:
            for k in range(2, d - 1):
                assert codim_stratum(n, d, k) == k * (n - d) + k * (k - 1) // 2


def test_perversity_family_validity_boundary():
    for d in range(4, 11):
        for n in range(d + 2, 13):
            for k in range(0, n - d + 2):
                p = perversity_pk(n, d, k)
                assert p.valid == (k <= n - d - 1)
                assert p.satisfies_gm() == p.valid


def test_top_perversity_recursion():
    for d in range(4, 11):
        for n in range(d + 2, 13):
            assert top_perversity(n, d) - perversity_pk(n, d, 1) == top_perversity(n - 1, d).values


# --- surgeries -------------------------------------------------------------


def test_surgery_examples():
    assert merge(L([1, 2, 3, 4]), mask({1, 2})) == L([3, 7])
    assert split_minus(L([1, 1, 2, 2])) == L.parse("1,1,0+e")
    assert split_plus(L([1, 1, 1, 2])) == L([1, 1, 3])
    assert split_minus(L([1, 2, 3, 5])) == L([1, 2, 2])


def test_split_requires_ordered_and_long_enough():
    with pytest.raises(ValueError):
        split_plus(L([2, 1, 1, 1]))
    with pytest.raises(ValueError):
        split_minus(L([1, 1, 1]))
    with pytest.raises(ValueError):
        merge(L([1, 2, 3]), mask({3}))


@given(generic_vectors(min_n=4))
def test_split_vectors_classify_through_the_parent(vec):
    v = L(sorted(vec))
    n = v.n
    plus, minus = split_plus(v), split_minus(v)
    top_pair = mask({n - 1, n})
    for J in range(1 << (n - 2)):
        # J + {n-1} in plus matches J + {n-1, n} in v
        assert classify_subset(plus, J | (1 << (n - 2))) is classify_subset(v, J | top_pair)
        # J + {n-1} in minus matches J + {n} in v (n-1 sits in the complement)
        assert classify_subset(minus, J | (1 << (n - 2))) is classify_subset(v, J | (1 << (n - 1)))
    assert is_generic(plus) and is_generic(minus)


@given(generic_vectors(min_n=4), st.data())
def test_merge_classification(vec, data):
    v = L(vec)
    n = v.n
    J = data.draw(st.integers(0, (1 << (n - 1)) - 1))
    merged = merge(v, J)
    rest = [i for i in range(1, n) if not (J >> (i - 1)) & 1]
    # K + {last} in the merged vector is J + K + {n} in v
    for r in range(len(rest) + 1):
        for K in itertools.combinations(range(1, len(rest) + 1), r):
            orig = J | mask([rest[i - 1] for i in K]) | (1 << (n - 1))
            assert classify_subset(merged, mask(K) | (1 << (merged.n - 1))) is classify_subset(v, orig)
