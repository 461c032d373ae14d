"""Formal sums, pattern canonicalization, pushforward, symmetrization."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modiag.formal import (
    BASE,
    ON_DIAGONAL_GROUP,
    VAR,
    VAR_CONJ,
    Assignment,
    FormalSum,
    MarkedClassKey,
    OmegaBarKey,
    Pattern,
    SubsetClassKey,
    all_patterns,
    push_forward,
    subset_to_pattern,
    symmetrize,
)

patterns = st.lists(st.sampled_from([BASE, VAR, VAR_CONJ]), min_size=1, max_size=6).map(
    lambda slots: Pattern(tuple(slots)))
rationals = st.fractions(min_value=-8, max_value=8, max_denominator=6)


def test_pattern_canonical_under_conjugation():
    assert Pattern.from_string("yx") == Pattern.from_string("xy")
    assert Pattern.from_string("yyx").to_string() == "xxy"
    assert Pattern.from_string("axy") == Pattern.from_string("ayx")


@given(patterns)
def test_pattern_canonicalization_idempotent(pat):
    assert Pattern(pat.slots) == pat


def test_pattern_counts_and_string_round_trip():
    pat = Pattern.from_string("axxya")
    assert pat.counts == (2, 2, 1)
    assert Pattern.from_string(pat.to_string()) == pat


def test_subset_key_validation():
    with pytest.raises(ValueError):
        SubsetClassKey(3, frozenset())
    with pytest.raises(ValueError):
        SubsetClassKey(2, frozenset({3}))
    with pytest.raises(ValueError):
        MarkedClassKey(2, frozenset(), ON_DIAGONAL_GROUP)


def test_omegabar_key_normalizes_and_labels():
    assert OmegaBarKey(1, 0, 2) == OmegaBarKey(1, 2, 0)
    assert OmegaBarKey(0, 1, 1).label() == "(0,1,1)"
    assert OmegaBarKey(3, 0, 0).is_zero_class


def test_formal_sum_drops_zero_terms():
    key = SubsetClassKey(2, frozenset({1}))
    total = FormalSum([(key, 1), (key, -1)])
    assert total.is_zero
    assert len(FormalSum([(key, Fraction(1, 2)), (key, Fraction(1, 2))])) == 1


@settings(max_examples=80)
@given(st.lists(st.tuples(patterns, rationals), max_size=5),
       st.lists(st.tuples(patterns, rationals), max_size=5),
       st.lists(st.tuples(patterns, rationals), max_size=5),
       rationals, rationals)
def test_formal_sum_algebra_laws(a_terms, b_terms, c_terms, alpha, beta):
    u, v, w = FormalSum(a_terms), FormalSum(b_terms), FormalSum(c_terms)
    assert (u + v) + w == u + (v + w)
    assert u + v == v + u
    assert alpha * (u + v) == alpha * u + alpha * v
    assert (alpha + beta) * u == alpha * u + beta * u
    assert u - u == FormalSum.zero()


def test_push_forward_pattern_examples():
    one_var = FormalSum.of(Pattern((VAR,)))
    out = push_forward(one_var, Assignment(2, (1, 0)))
    assert out == FormalSum.of(Pattern((VAR, BASE)))

    xy = FormalSum.of(Pattern((VAR, VAR_CONJ)))
    out = push_forward(xy, Assignment(3, (1, 2, -1)))
    assert out == FormalSum.of(Pattern((VAR, VAR_CONJ, VAR_CONJ)))


def test_push_forward_all_base_image_dies():
    one_var = FormalSum.of(Pattern((VAR,)))
    assert push_forward(one_var, Assignment(2, (0, 0))).is_zero


def test_push_forward_subset_and_marked():
    key = MarkedClassKey(2, frozenset({1, 2}), ON_DIAGONAL_GROUP)
    out = push_forward(FormalSum.of(key), Assignment(3, (1, 0, 2)))
    assert out == FormalSum.of(MarkedClassKey(3, frozenset({1, 3}), ON_DIAGONAL_GROUP))

    plain = SubsetClassKey(2, frozenset({2}))
    out = push_forward(FormalSum.of(plain), Assignment(3, (1, 0, 0)))
    assert out.is_zero  # the free coordinate group was dropped


def test_push_forward_rejects_bad_indices():
    with pytest.raises(ValueError):
        push_forward(FormalSum.of(Pattern((VAR,))), Assignment(2, (1, 2)))
    with pytest.raises(ValueError):
        push_forward(FormalSum.of(SubsetClassKey(2, frozenset({1}))),
                     Assignment(2, (1, -2)))


@settings(max_examples=60)
@given(st.lists(st.tuples(patterns, rationals), max_size=4),
       st.lists(st.tuples(patterns, rationals), max_size=4))
def test_push_forward_is_linear(a_terms, b_terms):
    u = FormalSum([(Pattern((p.slots + (VAR,) * 4)[:4]), c) for p, c in a_terms])
    v = FormalSum([(Pattern((p.slots + (VAR,) * 4)[:4]), c) for p, c in b_terms])
    assignment = Assignment(5, (1, 3, 0, -2, 4))
    lhs = push_forward(u + v, assignment)
    rhs = push_forward(u, assignment) + push_forward(v, assignment)
    assert lhs == rhs


def test_symmetrize_examples():
    assert symmetrize(FormalSum.of(Pattern((BASE, VAR, VAR)))) == \
        FormalSum.of(OmegaBarKey(1, 2, 0))
    assert symmetrize(FormalSum.of(Pattern((VAR, VAR_CONJ)))) == \
        FormalSum.of(OmegaBarKey(0, 1, 1))
    # the all-base class is zero by convention, so nothing survives
    assert symmetrize(FormalSum([(Pattern((VAR, BASE)), 1),
                                 (Pattern((VAR, BASE)), -1)])).is_zero


@settings(max_examples=50)
@given(st.lists(st.tuples(patterns, rationals), max_size=5), st.data())
def test_symmetrize_permutation_invariant(terms, data):
    total = FormalSum([(Pattern((p.slots + (BASE,) * 5)[:5]), c)
                       for p, c in terms])
    perm = tuple(data.draw(st.permutations(range(5))))
    permuted = FormalSum([(key.permuted(perm), c) for key, c in total.items()])
    assert symmetrize(permuted) == symmetrize(total)


def test_subset_to_pattern():
    assert subset_to_pattern(SubsetClassKey(3, frozenset({1, 3}))) == \
        Pattern((VAR, BASE, VAR))
    assert subset_to_pattern(SubsetClassKey(2, frozenset({1, 2}))) == \
        Pattern((VAR, VAR))
    assert subset_to_pattern(SubsetClassKey(1, frozenset({1}))) == Pattern((VAR,))


def test_all_patterns_counts():
    # (3^q - 1) / 2 conjugation classes once the all-base pattern is dropped
    for q in range(1, 5):
        assert len(all_patterns(q)) == (3 ** q - 1) // 2


def test_pattern_string_alphabet_matches_interface():
    labels = {p.to_string() for p in all_patterns(2)}
    assert labels == {"ax", "xa", "xx", "xy"}
