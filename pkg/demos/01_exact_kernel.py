"""Exact scalar kernel: generalized binomials and certified linear solves.

Everything downstream rests on two guarantees demonstrated here: binomial
coefficients evaluate exactly for any integer top argument, and every
linear solve returns a certificate that can be re-checked by plain
arithmetic, in both the solvable and the unsolvable direction.
"""

from fractions import Fraction

from modiag.exactalg import (
    IntPolynomial,
    RationalMatrix,
    alternating_binomial_vanishes,
    binom,
    membership,
    solve_exact,
)

print("Generalized binomials (negative tops follow the falling factorial):")
for u, k in [(5, 2), (-1, 3), (-1, 4), (4, -1), (-3, 0)]:
    print(f"  binom({u:2d},{k:2d}) = {binom(u, k)}")

print("\nPascal's rule holds for every integer top:")
for u in (-7, 0, 9):
    lhs = binom(u, 4)
    rhs = binom(u - 1, 4) + binom(u - 1, 3)
    print(f"  u={u:3d}: {lhs} == {rhs}")

print("\nAlternating binomial sums kill polynomials of low degree:")
for n in (3, 6, 9):
    checks = all(alternating_binomial_vanishes(n, IntPolynomial.monomial(d))
                 for d in range(n))
    print(f"  n={n}: every monomial of degree < {n} sums to zero: {checks}")

print("\nAn exact solve with a one-dimensional solution family:")
a = RationalMatrix([[1, 1, 0], [0, 0, 1]])
cert = solve_exact(a, [2, Fraction(5, 3)])
print(f"  particular solution: {cert.vector}")
print(f"  nullspace basis:     {cert.nullspace}")

print("\nAn unsolvable system returns a functional that proves it:")
cert = solve_exact(RationalMatrix([[1, 1], [2, 2]]), [1, 3])
print(f"  functional y = {cert.vector}")
print("  y.A =", [cert.vector[0] * 1 + cert.vector[1] * 2,
                  cert.vector[0] * 1 + cert.vector[1] * 2], " y.b =",
      cert.vector[0] * 1 + cert.vector[1] * 3)

print("\nSpan membership works the same way:")
print(" ", membership([1, 0, 0], [[1, 0, 0], [0, 0, 1]]).vector)
print(" ", membership([0, 1, 0], [[1, 0, 0]]).kind)
