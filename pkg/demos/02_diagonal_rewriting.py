"""Modified diagonals and the rewriting their vanishing generates.

The m-th modified diagonal is a signed sum over all 2^m - 1 diagonal-type
classes.  Assuming it vanishes lets any class on m or more coordinates be
rewritten into smaller ones; iterating the hypothesis along an extra
coordinate re-derives the same coefficients (an independent oracle), and
rewriting a higher modified diagonal always gives zero (stability).
"""

from modiag.diagonals import (
    GammaHypothesis,
    closed_form_reduction,
    inductive_reduction,
    modified_diagonal,
    normal_form,
    reduce_subset_diagonal,
    verify_stability,
)

print("The third modified diagonal:")
print(" ", modified_diagonal(3))

hyp = GammaHypothesis(2)
print("\nRewriting the full triple diagonal under the order-2 hypothesis:")
print(" ", reduce_subset_diagonal({1, 2, 3}, 3, hyp))

print("\nThe inductive oracle agrees with the closed form:")
for m, r in [(2, 1), (3, 1), (3, 2), (4, 3)]:
    same = inductive_reduction(m, r) == closed_form_reduction(m, r)
    print(f"  order {m}, {r} extra coordinate(s): {same}")

print("\nRewriting the higher modified diagonals gives zero (stability):")
for m in (2, 3, 4):
    for s in (0, 1, 2):
        assert verify_stability(m, s)
    print(f"  order {m}: extensions 0..2 all rewrite to zero")

print("\nA worked normal form: the third modified diagonal dies under order 2:")
print(" ", normal_form(modified_diagonal(3), hyp))
