"""Projective-bundle coefficient calculus and fibration vanishing checks.

The diagonal of a projective bundle expands in powers of the relative
hyperplane class with coefficients that are universal polynomials in the
Chern classes of the defining sheaf.  Those polynomials obey a triangular
recursion driven by Segre classes (the formal inverse of the total Chern
series); low orders have closed forms which the recursion must reproduce.
Pulling the expansion through the modified diagonal leaves, per multi-index
H, an alternating marked-class sum over the subsets whose complement sits
inside Top H = {i : h_i = r}.  The bound |Top H| >= m-1 at defect one
(resp. >= m-2 at defect two) feeds those sums to the marked relation span,
which is what the curve and surface fibration verifications certify.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping

from .exactalg import Certificate, format_rational
from .diagonals import (
    GammaHypothesis,
    SharedRelationSpan,
    normal_form,
    relation_instances,
)
from .formal import (
    ON_DIAGONAL_GROUP,
    FormalSum,
    MarkedClassKey,
    SubsetClassKey,
)


class ChernPolynomial:
    """Graded polynomial in abstract Chern classes c_1, c_2, ... with
    rational coefficients, truncated above a fixed total degree.

    Monomials are exponent tuples (a_1, a_2, ...) for c_1^a1 c_2^a2 ...,
    trailing zeros trimmed; deg c_i = i, and any monomial of total degree
    above the truncation bound is identically zero (classes above the
    dimension of the base vanish).
    """

    __slots__ = ("terms", "truncation")

    def __init__(self, terms: Mapping[tuple[int, ...], Fraction] | None,
                 truncation: int):
        self.truncation = truncation
        data: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                mono = _trim(mono)
                if _degree(mono) > truncation:
                    continue
                c = data.get(mono, Fraction(0)) + Fraction(coeff)
                if c:
                    data[mono] = c
                else:
                    data.pop(mono, None)
        self.terms = data

    @classmethod
    def zero(cls, truncation: int) -> "ChernPolynomial":
        return cls(None, truncation)

    @classmethod
    def constant(cls, value, truncation: int) -> "ChernPolynomial":
        return cls({(): Fraction(value)}, truncation)

    @classmethod
    def chern_class(cls, i: int, truncation: int) -> "ChernPolynomial":
        if i < 1:
            raise ValueError("Chern class index must be >= 1")
        mono = tuple(0 if j != i - 1 else 1 for j in range(i))
        return cls({mono: Fraction(1)}, truncation)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "ChernPolynomial") -> "ChernPolynomial":
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            c = out.get(mono, Fraction(0)) + coeff
            if c:
                out[mono] = c
            else:
                out.pop(mono, None)
        result = ChernPolynomial.__new__(ChernPolynomial)
        result.terms = out
        result.truncation = self.truncation
        return result

    def __neg__(self) -> "ChernPolynomial":
        result = ChernPolynomial.__new__(ChernPolynomial)
        result.terms = {m: -c for m, c in self.terms.items()}
        result.truncation = self.truncation
        return result

    def __sub__(self, other: "ChernPolynomial") -> "ChernPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "ChernPolynomial":
        if not isinstance(other, ChernPolynomial):
            scalar = Fraction(other)
            result = ChernPolynomial.__new__(ChernPolynomial)
            result.terms = {} if scalar == 0 else {m: c * scalar for m, c in self.terms.items()}
            result.truncation = self.truncation
            return result
        out: dict[tuple[int, ...], Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                if _degree(mono) > self.truncation:
                    continue
                c = out.get(mono, Fraction(0)) + c1 * c2
                if c:
                    out[mono] = c
                else:
                    out.pop(mono, None)
        result = ChernPolynomial.__new__(ChernPolynomial)
        result.terms = out
        result.truncation = self.truncation
        return result

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (isinstance(other, ChernPolynomial)
                and self.terms == other.terms
                and self.truncation == other.truncation)

    def __hash__(self):
        return hash((self.truncation, tuple(sorted(self.terms.items()))))

    def to_string(self) -> str:
        """Sorted monomial list, e.g. ``1/2 * c1^2 + 1 * c2``."""
        if not self.terms:
            return "0"
        bits = []
        for mono in sorted(self.terms,
                           key=lambda m: (_degree(m), tuple(-x for x in m))):
            factors = [f"c{i + 1}" + (f"^{p}" if p > 1 else "")
                       for i, p in enumerate(mono) if p]
            name = " ".join(factors) if factors else "1"
            bits.append(f"{format_rational(self.terms[mono])} * {name}")
        return " + ".join(bits)

    def __repr__(self):
        return f"ChernPolynomial({self.to_string()!r}, trunc={self.truncation})"


def _trim(mono) -> tuple[int, ...]:
    mono = tuple(mono)
    while mono and mono[-1] == 0:
        mono = mono[:-1]
    return mono


def _degree(mono: tuple[int, ...]) -> int:
    return sum((i + 1) * p for i, p in enumerate(mono))


def _mono_mul(m1, m2) -> tuple[int, ...]:
    if len(m1) < len(m2):
        m1, m2 = m2, m1
    return _trim(tuple(a + (m2[i] if i < len(m2) else 0) for i, a in enumerate(m1)))


def segre_class(i: int, truncation: int) -> ChernPolynomial:
    """i-th Segre class as a polynomial in the Chern classes.

    The Segre series is the formal inverse of the total Chern series
    (s_0 = 1, s_1 = -c_1, s_2 = c_1^2 - c_2, ...); negative indices are
    zero.  The sign convention is pinned by requiring the diagonal
    recursion to reproduce the explicit low-order coefficients, which
    explicit_bundle_coefficient checks.
    """
    if i < 0:
        return ChernPolynomial.zero(truncation)
    return _segre_table(truncation)[i] if i <= truncation else \
        _segre_recursive(i, truncation)


@lru_cache(maxsize=None)
def _segre_table(truncation: int) -> tuple[ChernPolynomial, ...]:
    table = [ChernPolynomial.constant(1, truncation)]
    for k in range(1, truncation + 1):
        acc = ChernPolynomial.zero(truncation)
        for i in range(1, k + 1):
            acc = acc + ChernPolynomial.chern_class(i, truncation) * table[k - i]
        table.append(-acc)
    return tuple(table)


def _segre_recursive(i: int, truncation: int) -> ChernPolynomial:
    # above the truncation degree every term dies
    return ChernPolynomial.zero(truncation)


def lambda_count(e: tuple[int, ...], p: int, r: int) -> int:
    """Number of entries with e_i + p <= r."""
    return sum(1 for v in e if v + p <= r)


def top_entries(h: tuple[int, ...], r: int) -> frozenset[int]:
    """1-based positions where the multi-index reaches the fiber dimension."""
    return frozenset(i + 1 for i, v in enumerate(h) if v == r)


def bundle_coefficients(n: int, r: int, dim_base: int) -> dict[tuple[int, ...], ChernPolynomial]:
    """Universal diagonal coefficients P_E for all multi-indices E in
    {0..r}^n, by the descending-degree recursion.

    P_E = s_{|E^v| - r} - sum over H > E (componentwise, |H| > |E|,
    max H <= r) of P_H * prod_i s_{h_i - e_i}, all products truncated at the
    base dimension.  The recursion is triangular because s_j = 0 for j < 0.
    """
    if n < 2 or r < 1:
        raise ValueError("need n >= 2 and r >= 1")
    indices = sorted(itertools.product(range(r + 1), repeat=n),
                     key=lambda e: (-sum(e), e))
    table: dict[tuple[int, ...], ChernPolynomial] = {}
    for e in indices:
        dual_sum = n * r - sum(e)
        acc = segre_class(dual_sum - r, dim_base)
        for h in itertools.product(*(range(v, r + 1) for v in e)):
            if sum(h) <= sum(e):
                continue
            prod = table[h]
            for hv, ev in zip(h, e):
                if hv > ev:
                    prod = prod * segre_class(hv - ev, dim_base)
            acc = acc - prod
        table[e] = acc
    return table


def recursion_residual(n: int, r: int, dim_base: int,
                       table: dict[tuple[int, ...], ChernPolynomial]) -> bool:
    """Substitute the computed coefficients back into the recursion and
    check the identity holds exactly at every level."""
    for e in table:
        dual_sum = n * r - sum(e)
        acc = ChernPolynomial.zero(dim_base)
        for h in itertools.product(*(range(v, r + 1) for v in e)):
            prod = table[h]
            for hv, ev in zip(h, e):
                if hv > ev:
                    prod = prod * segre_class(hv - ev, dim_base)
            acc = acc + prod
        if not (acc - segre_class(dual_sum - r, dim_base)).is_zero:
            return False
    return True


def explicit_bundle_coefficient(e: tuple[int, ...], r: int,
                                dim_base: int) -> ChernPolynomial | None:
    """Closed forms for the four highest levels: zero above r(n-1), the
    diagonal class at r(n-1), then two explicit Chern combinations.
    Returns None outside the stated range."""
    n = len(e)
    total = sum(e)
    top = r * (n - 1)
    if total > top:
        return ChernPolynomial.zero(dim_base)
    if total == top:
        return ChernPolynomial.constant(1, dim_base)
    if total == top - 1:
        lam = lambda_count(e, 1, r)
        return (lam - 1) * ChernPolynomial.chern_class(1, dim_base)
    if total == top - 2:
        lam1 = lambda_count(e, 1, r)
        lam2 = lambda_count(e, 2, r)
        c1 = ChernPolynomial.chern_class(1, dim_base)
        c2 = ChernPolynomial.chern_class(2, dim_base)
        return (Fraction((lam1 - 1) * (lam1 - 2), 2)) * (c1 * c1) + (lam2 - 1) * c2
    return None


def bundle_coefficient_failures(n: int, r: int, dim_base: int) -> list[dict]:
    """Mismatches between the recursion and the explicit closed forms, plus
    any failed back-substitution; empty when everything reproduces."""
    failures = []
    table = bundle_coefficients(n, r, dim_base)
    for e, computed in sorted(table.items()):
        expected = explicit_bundle_coefficient(e, r, dim_base)
        if expected is not None and computed != expected:
            failures.append({"kind": "explicit_form", "E": list(e),
                             "computed": computed.to_string(),
                             "expected": expected.to_string()})
    if not recursion_residual(n, r, dim_base, table):
        failures.append({"kind": "recursion_residual", "n": n, "r": r})
    return failures


def multi_indices_with_sum(length: int, cap: int, total: int) -> Iterator[tuple[int, ...]]:
    """Tuples in {0..cap}^length with the given sum, lexicographic order."""
    def rec(prefix: list[int], remaining: int, slots: int):
        if slots == 0:
            if remaining == 0:
                yield tuple(prefix)
            return
        low = max(0, remaining - cap * (slots - 1))
        high = min(cap, remaining)
        for v in range(low, high + 1):
            prefix.append(v)
            yield from rec(prefix, remaining - v, slots - 1)
            prefix.pop()

    yield from rec([], total, length)


def top_bound_check(m: int, r: int, defect: int) -> bool:
    """Size bound on Top H for multi-indices H of length m+r, max <= r, at
    total r(m+r-1) - defect: at least m-1 top entries for defect one, at
    least m-2 for defect two.  At defect two the equality case is also
    characterized: exactly the H with every entry in {r-1, r} and r+2
    entries equal to r-1."""
    if m < 2 or r < 1 or defect not in (1, 2):
        raise ValueError("need m >= 2, r >= 1, defect in {1, 2}")
    length = m + r
    total = r * (length - 1) - defect
    bound = m - 1 if defect == 1 else m - 2
    for h in multi_indices_with_sum(length, r, total):
        size = len(top_entries(h, r))
        if size < bound:
            return False
        if defect == 2:
            near = all(r - 1 <= v <= r for v in h)
            cardinality_ok = near and sum(1 for v in h if v == r - 1) == r + 2
            if (size == bound) != cardinality_ok:
                return False
    return True


def alternating_top_sum(ambient: int, top: frozenset[int], marked: bool) -> FormalSum:
    """Signed sum over the subsets I whose complement lies inside ``top``:
    (-1)^(ambient - |I|) times the (marked) diagonal class on I."""
    universe = frozenset(range(1, ambient + 1))
    terms = []
    for size in range(len(top) + 1):
        for dropped in itertools.combinations(sorted(top), size):
            subset = universe - frozenset(dropped)
            key = (MarkedClassKey(ambient, subset, ON_DIAGONAL_GROUP) if marked
                   else SubsetClassKey(ambient, subset))
            terms.append((key, (-1) ** size))
    return FormalSum(terms)


@dataclass
class FibrationReport:
    """Outcome of a fibration vanishing verification."""

    m: int
    r: int
    ok: bool
    certificates: list[tuple[tuple[int, ...], Certificate]] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)


def _membership_by_top(m_hyp: int, ambient: int, tops: list[frozenset[int]],
                       hs: list[tuple[int, ...]]) -> tuple[bool, list, list]:
    """Check each alternating top sum against the marked relation span of
    the order-m_hyp hypothesis.

    One shared span serves all targets (a single elimination pass over the
    generators), memoized on the top set since the target depends on H only
    through Top H."""
    span = SharedRelationSpan(relation_instances(m_hyp, ambient, marked=True))
    cache: dict[frozenset[int], Certificate] = {}
    certificates = []
    failures = []
    ok = True
    for h, top in zip(hs, tops):
        cert = cache.get(top)
        if cert is None:
            target = alternating_top_sum(ambient, top, marked=True)
            cert = span.membership(target)
            if not span.check(target, cert):
                failures.append({"kind": "certificate_check", "H": list(h)})
                ok = False
            cache[top] = cert
        certificates.append((h, cert))
        if not cert.is_solution:
            failures.append({"kind": "not_in_relation_span", "H": list(h),
                             "top": sorted(top)})
            ok = False
    return ok, certificates, failures


def verify_fibration_curve(m: int, r: int) -> FibrationReport:
    """Vanishing inputs for bundles over a curve.

    Defect-zero multi-indices: the unmarked alternating top sum rewrites to
    zero under the order-m hypothesis (the leading term of the pulled-back
    modified diagonal is independent of the sheaf and vanishes for the
    trivial one).  Defect-one multi-indices: the marked alternating top sum
    lies in the span of the marked relation instances; |Top H| >= m-1 is
    what makes the span rich enough.
    """
    if m < 2 or r < 1:
        raise ValueError("need m >= 2 and r >= 1")
    ambient = m + r
    hyp = GammaHypothesis(m)
    failures: list[dict] = []

    leading_ok = True
    for h in multi_indices_with_sum(ambient, r, r * (ambient - 1)):
        top = top_entries(h, r)
        reduced = normal_form(alternating_top_sum(ambient, top, marked=False), hyp)
        if not reduced.is_zero:
            leading_ok = False
            failures.append({"kind": "leading_term", "H": list(h),
                             "residue": repr(reduced)})

    hs = list(multi_indices_with_sum(ambient, r, r * (ambient - 1) - 1))
    tops = [top_entries(h, r) for h in hs]
    ok, certificates, member_failures = _membership_by_top(m, ambient, tops, hs)
    failures.extend(member_failures)
    return FibrationReport(m, r, ok and leading_ok, certificates, failures,
                           details={"leading_term_zero": leading_ok,
                                    "defect_one_count": len(hs)})


GAMMA_LOWER = "gamma_m_minus_1"
CHERN_POINT = "chern_point_multiple"


def verify_fibration_surface(m: int, r: int, case: str) -> FibrationReport:
    """Vanishing inputs for bundles over a surface, defect-two level.

    case == "gamma_m_minus_1": the marked alternating top sums lie in the
    relation span generated by the order-(m-1) hypothesis (|Top H| >= m-2).
    case == "chern_point_multiple": when the marker classes are point
    multiples only the scalar coefficients matter, and they alternate to
    zero because Top H is nonempty (needs m >= 3).
    """
    if r < 1:
        raise ValueError("need r >= 1")
    ambient = m + r
    hs = list(multi_indices_with_sum(ambient, r, r * (ambient - 1) - 2))
    tops = [top_entries(h, r) for h in hs]
    if case == GAMMA_LOWER:
        if m < 3:
            raise ValueError("the lower hypothesis case needs m >= 3")
        ok, certificates, failures = _membership_by_top(m - 1, ambient, tops, hs)
        return FibrationReport(m, r, ok, certificates, failures,
                               details={"case": case, "defect_two_count": len(hs)})
    if case == CHERN_POINT:
        if m < 3:
            raise ValueError("the point-multiple case needs m >= 3")
        failures = []
        for h, top in zip(hs, tops):
            if not top:
                failures.append({"kind": "empty_top_set", "H": list(h)})
                continue
            total = sum((-1) ** size * sum(1 for _ in itertools.combinations(sorted(top), size))
                        for size in range(len(top) + 1))
            if total != 0:
                failures.append({"kind": "scalar_sum", "H": list(h), "sum": total})
        return FibrationReport(m, r, not failures, [], failures,
                               details={"case": case, "defect_two_count": len(hs)})
    raise ValueError(f"unknown case {case!r}")
