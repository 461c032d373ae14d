"""The product theorem's combinatorics, verified level by level.

On a product with hypotheses of orders m and n, the level-t coefficient of
each basis pair must alternate to zero when summed over t.  The script
shows one pair in full, then sweeps every context with e = m+n-1 up to 9.
"""

import time

from modiag.products import (
    ProductContext,
    expand_pair_diagonal,
    kunneth_failures,
    pair_coefficient,
    pair_coefficient_closed,
)

ctx = ProductContext(2, 2)
print("Expansion of the full pair diagonal on three coordinates (orders 2,2):")
print(" ", expand_pair_diagonal({1, 2, 3}, ctx))

print("\nLevel coefficients for the pair J={1}, K={1} and their alternation:")
values = [pair_coefficient({1}, {1}, t, ctx) for t in (1, 2, 3)]
print(f"  c(1..3) = {values},  -c(1)+c(2)-c(3) = {-values[0]+values[1]-values[2]}")

print("\nClosed form agrees where it is asserted (t >= max(|J u K|, n)):")
for t in (2, 3):
    print(f"  t={t}: mechanical {pair_coefficient({1}, {1}, t, ctx)}"
          f" closed {pair_coefficient_closed({1}, {1}, t, ctx)}")

print("\nFull sweep over every context with e <= 9:")
start = time.perf_counter()
for m in range(2, 10):
    for n in range(m, 10):
        if m + n - 1 > 9:
            continue
        failures = kunneth_failures(ProductContext(m, n))
        print(f"  orders ({m},{n}), e={m+n-1}: "
              f"{'all pairs vanish' if not failures else failures[:3]}")
print(f"  ({time.perf_counter() - start:.1f}s)")
