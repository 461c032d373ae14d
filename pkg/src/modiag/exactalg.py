"""Exact scalar arithmetic and certified linear algebra.

Every computation in this package happens over the rationals with no
rounding anywhere: scalars are :class:`fractions.Fraction`, binomial
coefficients are evaluated by integer falling factorials (so that a
negative upper argument is meaningful), and linear systems are solved by
exact Gauss-Jordan elimination that returns a checkable certificate in
both directions -- a solution vector, or a functional witnessing
infeasibility.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Rational = Fraction

SOLUTION = "solution"
INFEASIBLE = "infeasible"


def format_rational(x) -> str:
    """Serialize a rational as ``p/q`` in lowest terms, ``p`` when q == 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


def binom(u: int, k: int) -> int:
    """Generalized binomial coefficient with integer (possibly negative) top.

    For k < 0 the value is 0; otherwise u(u-1)...(u-k+1)/k!, which is an
    exact integer for every integer u.  Pascal's rule
    binom(u, k) == binom(u-1, k) + binom(u-1, k-1) holds for all integer u
    and k >= 1.
    """
    if k < 0:
        return 0
    if k == 0:
        return 1
    num = 1
    for i in range(k):
        num *= u - i
    return num // math.factorial(k)


class IntPolynomial:
    """Polynomial with rational coefficients, indexed by degree."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable = ()):
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients: tuple[Fraction, ...] = tuple(coeffs)

    @classmethod
    def monomial(cls, degree: int, coefficient=1) -> "IntPolynomial":
        return cls([0] * degree + [coefficient])

    @property
    def degree(self):
        """Degree, with float('-inf') as the zero-polynomial sentinel."""
        if not self.coefficients:
            return float("-inf")
        return len(self.coefficients) - 1

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPolynomial) and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coefficients)!r})"


def alternating_binomial_vanishes(n: int, p: IntPolynomial) -> bool:
    """Check sum_{t=0..n} (-1)^t p(t) binom(n, t) == 0.

    The sum vanishes for every polynomial of degree < n; the degree bound is
    a precondition and violating it is a usage error, not a counterexample.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if p.degree >= n:
        raise ValueError(f"degree {p.degree} not below n={n}")
    total = sum(((-1) ** t) * p(t) * binom(n, t) for t in range(n + 1))
    return total == 0


class RationalMatrix:
    """Dense matrix of exact rationals."""

    __slots__ = ("entries", "rows", "cols")

    def __init__(self, entries: Sequence[Sequence]):
        rows = tuple(tuple(Fraction(x) for x in row) for row in entries)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged matrix")
        else:
            width = 0
        self.entries = rows
        self.rows = len(rows)
        self.cols = width

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "RationalMatrix":
        cols = [list(c) for c in columns]
        if not cols:
            return cls([])
        height = len(cols[0])
        if any(len(c) != height for c in cols):
            raise ValueError("ragged columns")
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(height)])

    def mat_vec(self, v: Sequence) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return tuple(sum((row[j] * Fraction(v[j]) for j in range(self.cols)), Fraction(0))
                     for row in self.entries)

    def to_json_obj(self) -> list[list[str]]:
        return [[format_rational(x) for x in row] for row in self.entries]

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and self.entries == other.entries

    def __repr__(self) -> str:
        return f"RationalMatrix({[list(r) for r in self.entries]!r})"


@dataclass(frozen=True)
class Certificate:
    """Outcome of an exact linear solve.

    kind == "solution": vector solves A x = b exactly, and ``nullspace``
    is a basis of ker A (free variables in ascending column order).
    kind == "infeasible": vector y satisfies y^T A = 0 and y^T b != 0.
    """

    kind: str
    vector: tuple[Fraction, ...]
    nullspace: tuple[tuple[Fraction, ...], ...] = ()

    @property
    def is_solution(self) -> bool:
        return self.kind == SOLUTION

    def to_json_obj(self) -> dict:
        return {
            "kind": self.kind,
            "vector": [format_rational(x) for x in self.vector],
            "nullspace": [[format_rational(x) for x in v] for v in self.nullspace],
        }


def vector_to_json(v: Sequence) -> list[str]:
    return [format_rational(x) for x in v]


def solve_exact(a: RationalMatrix, b: Sequence) -> Certificate:
    """Solve A x = b exactly or certify that no solution exists.

    Pivoting rule: first row with a nonzero entry in the leftmost
    unresolved column.  The particular solution sets every free variable
    to zero; nullspace basis vectors carry a 1 in one free column each,
    free columns in ascending order.  Fully deterministic.
    """
    if len(b) != a.rows:
        raise ValueError("dimension mismatch between matrix and right-hand side")
    m, n = a.rows, a.cols
    mat = [list(row) for row in a.entries]
    rhs = [Fraction(x) for x in b]
    # transform tracks row operations: transform . A_original == mat at all times
    transform = [[Fraction(1 if i == j else 0) for j in range(m)] for i in range(m)]

    pivot_cols: list[int] = []
    rank = 0
    for col in range(n):
        pivot_row = None
        for i in range(rank, m):
            if mat[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != rank:
            mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
            rhs[rank], rhs[pivot_row] = rhs[pivot_row], rhs[rank]
            transform[rank], transform[pivot_row] = transform[pivot_row], transform[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        rhs[rank] *= inv
        transform[rank] = [x * inv for x in transform[rank]]
        for i in range(m):
            if i == rank or mat[i][col] == 0:
                continue
            factor = mat[i][col]
            mat[i] = [x - factor * y for x, y in zip(mat[i], mat[rank])]
            rhs[i] -= factor * rhs[rank]
            transform[i] = [x - factor * y for x, y in zip(transform[i], transform[rank])]
        pivot_cols.append(col)
        rank += 1

    for i in range(rank, m):
        if rhs[i] != 0:
            return Certificate(INFEASIBLE, tuple(transform[i]))

    solution = [Fraction(0)] * n
    for r, col in enumerate(pivot_cols):
        solution[col] = rhs[r]

    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(n) if c not in pivot_set]
    nullspace = []
    for f in free_cols:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, col in enumerate(pivot_cols):
            v[col] = -mat[r][f]
        nullspace.append(tuple(v))
    return Certificate(SOLUTION, tuple(solution), tuple(nullspace))


def membership(target: Sequence, generators: Sequence[Sequence]) -> Certificate:
    """Express ``target`` in the span of ``generators`` or certify failure.

    A solution gives exact coefficients, columns aligned with the generator
    list; an infeasibility certificate is a functional (on the ambient
    vector space) vanishing on every generator but not on the target.
    """
    target = [Fraction(x) for x in target]
    gens = [list(g) for g in generators]
    if any(len(g) != len(target) for g in gens):
        raise ValueError("dimension mismatch among vectors")
    if not gens:
        if all(x == 0 for x in target):
            return Certificate(SOLUTION, ())
        lead = next(i for i, x in enumerate(target) if x != 0)
        y = [Fraction(0)] * len(target)
        y[lead] = Fraction(1)
        return Certificate(INFEASIBLE, tuple(y))
    a = RationalMatrix.from_columns(gens)
    return solve_exact(a, target)


class SpanBasis:
    """Growing reduced row basis over sparse vectors, with history.

    Vectors are dicts mapping integer coordinates to nonzero Fractions.
    The basis is kept fully reduced (each pivot coordinate appears in its
    own row only, normalized to 1), and every row remembers its exact
    expansion in terms of the inserted source vectors, so membership
    queries can report coefficients over the original generating family.
    """

    def __init__(self):
        self._rows: list[dict[int, Fraction]] = []
        self._combos: list[dict[int, Fraction]] = []
        self._pivot_row: dict[int, int] = {}
        self.n_sources = 0

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _axpy(self, vec, combo, factor, row_idx) -> None:
        row = self._rows[row_idx]
        for k, v in row.items():
            new = vec.get(k, Fraction(0)) - factor * v
            if new:
                vec[k] = new
            else:
                vec.pop(k, None)
        for g, v in self._combos[row_idx].items():
            new = combo.get(g, Fraction(0)) + factor * v
            if new:
                combo[g] = new
            else:
                combo.pop(g, None)

    def reduce(self, vec: dict) -> tuple[dict, dict]:
        """Return (remainder, combo) with vec == remainder + sum combo[g]*source_g."""
        vec = {k: Fraction(v) for k, v in vec.items() if v}
        combo: dict[int, Fraction] = {}
        for pivot in sorted(set(vec) & set(self._pivot_row)):
            if pivot in vec:
                self._axpy(vec, combo, vec[pivot], self._pivot_row[pivot])
        return vec, combo

    def eliminate_new_pivot(self, vec: dict, combo: dict, pivot: int) -> None:
        if pivot in vec:
            self._axpy(vec, combo, vec[pivot], self._pivot_row[pivot])

    def insert_source(self, vec: dict) -> int | None:
        """Insert a source vector; return its new pivot coordinate, or None."""
        g = self.n_sources
        self.n_sources += 1
        rem, combo = self.reduce(vec)
        if not rem:
            return None
        # history of the new row: row == source_g - sum combo[.]*source_.
        hist = {k: -v for k, v in combo.items()}
        hist[g] = hist.get(g, Fraction(0)) + 1
        pivot = min(rem)
        inv = 1 / rem[pivot]
        rem = {k: v * inv for k, v in rem.items()}
        hist = {k: v * inv for k, v in hist.items() if v * inv}
        row_idx = len(self._rows)
        self._rows.append(rem)
        self._combos.append(hist)
        self._pivot_row[pivot] = row_idx
        # keep the basis fully reduced
        for i in range(row_idx):
            other = self._rows[i]
            if pivot in other:
                factor = other[pivot]
                for k, v in rem.items():
                    new = other.get(k, Fraction(0)) - factor * v
                    if new:
                        other[k] = new
                    else:
                        other.pop(k, None)
                oc = self._combos[i]
                for g2, v in hist.items():
                    new = oc.get(g2, Fraction(0)) - factor * v
                    if new:
                        oc[g2] = new
                    else:
                        oc.pop(g2, None)
        return pivot

    def infeasibility_functional(self, remainder: dict) -> dict[int, Fraction]:
        """Functional vanishing on the span but not on basis + remainder.

        Requires ``remainder`` to be nonzero and fully reduced against the
        basis.
        """
        if not remainder:
            raise ValueError("remainder is zero; target lies in the span")
        lead = min(remainder)
        y = {lead: Fraction(1)}
        for pivot, row_idx in self._pivot_row.items():
            coeff = self._rows[row_idx].get(lead)
            if coeff:
                y[pivot] = -coeff
        return y


def stream_membership(target: dict, sources: Iterable[dict]) -> tuple[str, dict]:
    """Lazy membership of a sparse target in the span of a source stream.

    Consumes sources until the target reduces to zero (returning
    ("solution", coefficients-by-source-index)) or the stream is exhausted
    (returning ("infeasible", functional-by-coordinate)).
    """
    basis = SpanBasis()
    rem, combo = basis.reduce(target)
    if not rem:
        return SOLUTION, combo
    for src in sources:
        pivot = basis.insert_source(src)
        if pivot is not None:
            basis.eliminate_new_pivot(rem, combo, pivot)
            if not rem:
                return SOLUTION, combo
    return INFEASIBLE, basis.infeasibility_functional(rem)


class LazySpan:
    """Shared incremental span for several membership queries.

    Sources are pulled from the iterator only as needed; the reduced basis
    persists across queries, so a batch of targets against one generating
    family costs a single elimination pass.
    """

    def __init__(self, sources: Iterable[dict]):
        self._sources: Iterator[dict] = iter(sources)
        self._basis = SpanBasis()
        self._exhausted = False

    @property
    def sources_consumed(self) -> int:
        return self._basis.n_sources

    def membership(self, target: dict) -> tuple[str, dict]:
        rem, combo = self._basis.reduce(target)
        while rem and not self._exhausted:
            try:
                src = next(self._sources)
            except StopIteration:
                self._exhausted = True
                break
            pivot = self._basis.insert_source(src)
            if pivot is not None:
                self._basis.eliminate_new_pivot(rem, combo, pivot)
        if not rem:
            return SOLUTION, combo
        return INFEASIBLE, self._basis.infeasibility_functional(rem)
