"""Double-cover calculus: pattern pullbacks, appended-coordinate maps, and
the exact linear solves that rebuild the modified diagonal upstairs.

For a double cover with involution, pulling the m-th modified diagonal
back from the quotient produces a signed sum of involution patterns: each
basepoint slot doubles (the fiber over the branch point), and each
diagonal slot splits into the identity and the graph of the involution.
Appending m-1 extra coordinates -- each the basepoint, a chosen coordinate,
or its conjugate -- and symmetrizing yields one vector per appended list;
the question is whether some exact combination of those vectors equals the
(2m-1)-st modified diagonal in the symmetrized-counts basis.  The solver
answers with a solution family or an infeasibility functional, both
exactly re-checkable.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactalg import (
    Certificate,
    RationalMatrix,
    format_rational,
    solve_exact,
)
from .formal import (
    Assignment,
    FormalSum,
    OmegaBarKey,
    Pattern,
    all_patterns,
    push_forward,
    symmetrize,
)

# appended-list entries reuse the assignment encoding: 0 = basepoint,
# +j = coordinate j, -j = conjugated coordinate j


def entry_order_key(entry: int) -> tuple[int, int]:
    """Total order on appended entries: a < x_1 < ... < x_m < ix_1 < ... < ix_m."""
    if entry == 0:
        return (0, 0)
    if entry > 0:
        return (1, entry)
    return (2, -entry)


def entry_label(entry: int) -> str:
    if entry == 0:
        return "a"
    if entry > 0:
        return f"x{entry}"
    return f"ix{-entry}"


def nu_label(nu: tuple[int, ...]) -> str:
    return "(" + ",".join(entry_label(e) for e in nu) + ")"


def canonical_nu(entries, m: int) -> tuple[int, ...]:
    """Canonical appended list: minimal sorted form over coordinate
    relabelings.

    The appended-and-symmetrized map does not change when the list is
    reordered, and relabeling the m source coordinates acts on everything
    at once, so lists are considered up to both moves.
    """
    entries = tuple(entries)
    if len(entries) != m - 1:
        raise ValueError("an appended list has m-1 entries")
    best = None
    best_key = None
    for perm in itertools.permutations(range(1, m + 1)):
        relabeled = tuple(
            0 if e == 0 else (perm[e - 1] if e > 0 else -perm[-e - 1])
            for e in entries)
        candidate = tuple(sorted(relabeled, key=entry_order_key))
        key = tuple(entry_order_key(e) for e in candidate)
        if best_key is None or key < best_key:
            best, best_key = candidate, key
    return best


@lru_cache(maxsize=None)
def append_orbits(m: int) -> tuple[tuple[int, ...], ...]:
    """Canonical representatives of appended lists, in label order.

    For m = 2 these are (a), (x1), (ix1); for m = 3 the nine lists from
    (a,a) through (ix1,ix2).
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    alphabet = sorted([0] + [j for j in range(1, m + 1)] + [-j for j in range(1, m + 1)],
                      key=entry_order_key)
    seen = set()
    for combo in itertools.combinations_with_replacement(alphabet, m - 1):
        seen.add(canonical_nu(combo, m))
    return tuple(sorted(seen, key=lambda nu: tuple(entry_order_key(e) for e in nu)))


@lru_cache(maxsize=None)
def pullback_modified_diagonal(m: int) -> FormalSum:
    """Pattern expansion of the pulled-back m-th modified diagonal.

    Each conjugation-canonical pattern appears with coefficient (-2)^r
    where r counts its basepoint slots: the sign comes from the modified
    diagonal, the 2 from the doubled fiber over the branch point, and the
    two branches over a diagonal slot are the two members of the
    conjugation class.  Construction asserts the equivalent
    symmetrized-counts expansion; a mismatch would mean the per-pattern
    rule and the counts bookkeeping have drifted apart, and aborts.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    total = FormalSum(
        (pat, Fraction((-2) ** pat.counts[0])) for pat in all_patterns(m))
    if symmetrize(total) != _counts_form(m):
        raise AssertionError(
            "pattern coefficients disagree with the symmetrized-counts form")
    return total


def _counts_form(m: int) -> FormalSum:
    """Half the sum over ordered count triples (r, s, t) with r+s+t = m of
    (-2)^r/(r! s! t!) times the fully-symmetrized counts class, where one
    symmetrization contributes a stabilizer factor of m!."""
    acc: list[tuple[OmegaBarKey, Fraction]] = []
    m_factorial = math.factorial(m)
    for r in range(m + 1):
        for s in range(m - r + 1):
            t = m - r - s
            key = OmegaBarKey(r, s, t)
            if key.is_zero_class:
                continue
            coeff = Fraction((-2) ** r * m_factorial,
                             2 * math.factorial(r) * math.factorial(s) * math.factorial(t))
            acc.append((key, coeff))
    return FormalSum(acc)


def append_and_symmetrize(total: FormalSum, nu: tuple[int, ...]) -> FormalSum:
    """Append the listed coordinates, push forward, and symmetrize.

    The input lives on m coordinates with the list supplying m-1 more;
    the result is a counts-basis sum on 2m-1 coordinates.  Invariant under
    reordering the list and under relabeling coordinates.
    """
    m = len(nu) + 1
    return symmetrize(push_forward(total, Assignment.appending(m, nu)))


def modified_diagonal_omega(q: int) -> FormalSum:
    """The q-th modified diagonal in the symmetrized-counts basis:
    sum over r+s = q, s >= 1, of (-1)^r / (r! s!) times the counts class."""
    if q < 1:
        raise ValueError("q must be positive")
    return FormalSum(
        (OmegaBarKey(r, q - r, 0), Fraction((-1) ** r, math.factorial(r) * math.factorial(q - r)))
        for r in range(q))


# the printed row order of the order-3 coefficient table: the six
# conjugate-bearing rows first, then the five conjugate-free rows
TABLE_ROW_ORDER_M3 = (
    (3, 1, 1), (2, 2, 1), (1, 3, 1), (1, 2, 2), (0, 4, 1), (0, 3, 2),
    (0, 5, 0), (1, 4, 0), (2, 3, 0), (3, 2, 0), (4, 1, 0),
)


@dataclass(frozen=True)
class CoefficientTable:
    """Coefficients of each appended-list vector in the counts basis."""

    m: int
    rows: tuple[tuple[int, int, int], ...]
    columns: tuple[tuple[int, ...], ...]
    entries: tuple[tuple[Fraction, ...], ...]

    def column_labels(self) -> list[str]:
        return [nu_label(nu) for nu in self.columns]

    def row_labels(self) -> list[str]:
        return [f"({r},{s},{t})" for r, s, t in self.rows]


def coefficient_table(m: int) -> CoefficientTable:
    """Tabulate every appended-list vector for the given order.

    For m = 3 rows follow the printed order (conjugate-bearing counts
    first); otherwise rows are sorted.  Columns are the canonical appended
    lists in label order.
    """
    orbits = append_orbits(m)
    xi = pullback_modified_diagonal(m)
    columns = [append_and_symmetrize(xi, nu) for nu in orbits]
    if m == 3:
        rows = TABLE_ROW_ORDER_M3
    else:
        keys = set()
        for column in columns:
            keys.update(column.keys())
        rows = tuple(sorted(
            ((k.base_count, k.var_count, k.conj_count) for k in keys)))
    entries = tuple(
        tuple(col.coefficient(OmegaBarKey(*row)) for col in columns)
        for row in rows)
    return CoefficientTable(m, tuple(rows), tuple(orbits), entries)


@dataclass(frozen=True)
class DoubleCoverSolution:
    """Exact solution of the double-cover system at normalization 1.

    ``lambdas`` are the particular coefficients (free directions set to
    zero), ``nullspace`` spans the full solution family, and
    ``integer_scale`` is the least common multiple of the lambda
    denominators: scaling by it gives the integer presentation of the
    combination, equal to that multiple of the target diagonal.
    """

    m: int
    orbits: tuple[tuple[int, ...], ...]
    lambdas: tuple[Fraction, ...]
    scale: Fraction
    integer_scale: int
    nullspace: tuple[tuple[Fraction, ...], ...]
    residual_checked: bool

    def lambda_of(self, nu: tuple[int, ...]) -> Fraction:
        return self.lambdas[self.orbits.index(canonical_nu(nu, self.m))]

    def to_json_obj(self) -> dict:
        return {
            "status": "solution",
            "m": self.m,
            "orbits": [nu_label(nu) for nu in self.orbits],
            "lambdas": [format_rational(x) for x in self.lambdas],
            "scale": format_rational(self.scale),
            "integer_scale": self.integer_scale,
            "nullspace": [[format_rational(x) for x in v] for v in self.nullspace],
            "residual_checked": self.residual_checked,
        }


def _dense(total: FormalSum, row_keys) -> list[Fraction]:
    return [total.coefficient(k) for k in row_keys]


def solve_row_keys(m: int) -> list[OmegaBarKey]:
    """Row basis of the solve: every counts class appearing in the
    appended-list vectors or the target, in sorted order.  Infeasibility
    functionals from solve_double_cover are indexed against this list."""
    orbits = append_orbits(m)
    xi = pullback_modified_diagonal(m)
    keys = set(modified_diagonal_omega(2 * m - 1).keys())
    for nu in orbits:
        keys.update(append_and_symmetrize(xi, nu).keys())
    return sorted(keys, key=lambda k: k.sort_key())


def solve_double_cover(m: int) -> DoubleCoverSolution | Certificate:
    """Solve for a combination of appended-list vectors equal to the
    (2m-1)-st modified diagonal (normalization: scale 1).

    Returns the solution family or the exact infeasibility functional.  In
    both directions the certificate is re-verified by direct formal-sum
    arithmetic, independently of the elimination that produced it.
    """
    orbits = append_orbits(m)
    xi = pullback_modified_diagonal(m)
    columns = [append_and_symmetrize(xi, nu) for nu in orbits]
    target = modified_diagonal_omega(2 * m - 1)
    row_keys = solve_row_keys(m)
    matrix = RationalMatrix.from_columns([_dense(col, row_keys) for col in columns])
    cert = solve_exact(matrix, _dense(target, row_keys))
    if not cert.is_solution:
        functional = dict(zip(row_keys, cert.vector))
        def pair(total):
            return sum((functional.get(k, Fraction(0)) * v for k, v in total.items()),
                       Fraction(0))
        if any(pair(col) != 0 for col in columns) or pair(target) == 0:
            raise AssertionError("infeasibility functional failed its re-check")
        return cert
    combination = FormalSum.zero()
    for coeff, column in zip(cert.vector, columns):
        if coeff:
            combination = combination + coeff * column
    residual_ok = combination == target
    if not residual_ok:
        raise AssertionError("solution failed its residual re-check")
    denominators = [x.denominator for x in cert.vector if x] or [1]
    integer_scale = math.lcm(*denominators)
    return DoubleCoverSolution(
        m=m,
        orbits=tuple(orbits),
        lambdas=tuple(cert.vector),
        scale=Fraction(1),
        integer_scale=integer_scale,
        nullspace=cert.nullspace,
        residual_checked=residual_ok,
    )


def conjugate_free_system(m: int) -> tuple[RationalMatrix, list[tuple[int, int, int]]]:
    """Homogeneous subsystem on the conjugate-bearing rows.

    Solving it with zero right-hand side parametrizes the combinations of
    appended-list vectors with no conjugate-bearing counts classes left;
    the nullspace basis (free variables in ascending column order) is how
    the printed lambda relations are reproduced.
    """
    table = coefficient_table(m)
    rows = [row for row in table.rows if row[2] >= 1]
    entries = [
        [table.entries[table.rows.index(row)][j] for j in range(len(table.columns))]
        for row in rows
    ]
    return RationalMatrix(entries), rows


def combination_in_omega(m: int, lambdas) -> FormalSum:
    """The counts-basis value of an arbitrary coefficient choice."""
    orbits = append_orbits(m)
    if len(lambdas) != len(orbits):
        raise ValueError("one coefficient per canonical appended list")
    xi = pullback_modified_diagonal(m)
    acc = FormalSum.zero()
    for coeff, nu in zip(lambdas, orbits):
        if coeff:
            acc = acc + Fraction(coeff) * append_and_symmetrize(xi, nu)
    return acc
