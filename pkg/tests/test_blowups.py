"""Blow-up coefficient identities: enumeration, two routes, vanishing."""

import pytest

from modiag.blowups import (
    BlowupContext,
    blowup_coefficient_brute,
    blowup_coefficient_closed,
    blowup_failures,
    chern_multi_indices,
    top_set,
    top_set_bound_holds,
    verify_blowup,
)


def test_context_validation():
    with pytest.raises(ValueError):
        BlowupContext(3, 1)
    with pytest.raises(ValueError):
        BlowupContext(3, 3)
    assert BlowupContext(3, 2).degree_sum == 2


def test_multi_index_enumeration_examples():
    ctx = BlowupContext(3, 2)
    indices = chern_multi_indices(ctx)
    assert len(indices) == 6  # indicator vectors of 2-subsets of 4 slots
    assert all(sum(k) == 2 and max(k) <= 1 for k in indices)
    assert all(len(top_set(k, ctx)) == 2 for k in indices)

    ctx42 = BlowupContext(4, 2)
    indices = chern_multi_indices(ctx42)
    assert len(indices) == 10
    assert all(len(top_set(k, ctx42)) == 3 for k in indices)

    ctx43 = BlowupContext(4, 3)
    indices = chern_multi_indices(ctx43)
    assert (2, 2, 2, 1, 0) in indices
    assert top_set((2, 2, 2, 1, 0), ctx43) == frozenset({1, 2, 3})
    assert all(sum(k) == 7 and max(k) <= 2 for k in indices)


def test_enumeration_is_lexicographic():
    ctx = BlowupContext(3, 2)
    indices = chern_multi_indices(ctx)
    assert indices == sorted(indices)


def test_top_set_bound():
    for n, e in [(3, 2), (4, 2), (4, 3), (5, 3), (6, 4)]:
        ctx = BlowupContext(n, e)
        assert all(top_set_bound_holds(k, ctx) for k in chern_multi_indices(ctx))


def test_coefficient_examples():
    ctx = BlowupContext(3, 2)
    k = (1, 1, 0, 0)
    assert blowup_coefficient_closed({1}, k, 3, ctx) == 1
    assert blowup_coefficient_closed({1}, k, 4, ctx) == 1
    assert blowup_coefficient_closed({1}, k, 0, ctx) == 0
    assert blowup_coefficient_brute({1}, k, 1, ctx) == 0
    assert blowup_coefficient_brute({1}, k, 3, ctx) == 1


def test_worked_alternating_sum():
    ctx = BlowupContext(3, 2)
    k = (1, 1, 0, 0)
    values = [blowup_coefficient_closed({1}, k, t, ctx) for t in range(5)]
    assert values == [0, 0, 0, 1, 1]
    assert sum(((-1) ** t) * v for t, v in enumerate(values)) == 0


def test_routes_agree_on_sample_contexts():
    for n, e in [(3, 2), (4, 2), (4, 3)]:
        ctx = BlowupContext(n, e)
        subsets = [frozenset({1}), frozenset(range(1, n - e + 1))]
        for k in chern_multi_indices(ctx):
            for subset in subsets:
                for t in range(n + 2):
                    assert blowup_coefficient_closed(subset, k, t, ctx) == \
                        blowup_coefficient_brute(subset, k, t, ctx)


def test_verify_blowup_small():
    assert verify_blowup(BlowupContext(3, 2))
    assert verify_blowup(BlowupContext(4, 2))
    assert verify_blowup(BlowupContext(5, 3))


def test_failures_empty():
    assert blowup_failures(BlowupContext(4, 3)) == []
