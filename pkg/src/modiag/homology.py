"""Homological torsion threshold for modified diagonals.

Integrating a product of pulled-back forms over the m-th modified diagonal
multiplies the plain integral by an alternating binomial coefficient that
depends only on the number s of degree-zero factors.  Whether the class is
homologically torsion therefore reduces to a case analysis over degree
profiles, controlled by the dimension n and the Albanese dimension d; the
closed-form answer is torsion exactly when m > n + d, and the decision
procedure below reconstructs that threshold from the cases rather than
assuming it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactalg import binom


def integral_coefficient(m: int, s: int) -> int:
    """sum_{l=0..m-1} (-1)^l binom(s, l): the factor picked up by the
    modified diagonal when s of the m form degrees are zero."""
    if not 0 <= s <= m:
        raise ValueError("need 0 <= s <= m")
    return sum(((-1) ** level) * binom(s, level) for level in range(m))


def _degree_profiles(m: int, total: int):
    """Non-increasing degree tuples of length m summing to ``total``,
    entries bounded by ``total``; one representative per multiset."""
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], remaining: int, slots: int, cap: int):
        if slots == 0:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        high = min(cap, remaining)
        for v in range(high, -1, -1):
            if v * slots < remaining:
                break
            prefix.append(v)
            rec(prefix, remaining - v, slots - 1, v)
            prefix.pop()

    rec([], total, m, total)
    return out


@dataclass(frozen=True)
class TorsionDecision:
    """Outcome of the torsion case analysis, with its explanation trace."""

    m: int
    n: int
    d: int
    torsion: bool
    reason: str
    witness_profile: tuple[int, ...] | None = None
    vanishing_cases: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        obj = {"m": self.m, "n": self.n, "d": self.d, "torsion": self.torsion,
               "reason": self.reason}
        if self.witness_profile is not None:
            obj["witness_profile"] = list(self.witness_profile)
        if self.vanishing_cases:
            obj["vanishing_cases"] = dict(self.vanishing_cases)
        return obj


def torsion_decision(m: int, n: int, d: int) -> TorsionDecision:
    """Decide homological torsion of the m-th modified diagonal on an
    n-dimensional variety of Albanese dimension d.

    For m <= n the class pairs nonzero against hyperplane powers, so it is
    never torsion there.  For m > n, every degree profile summing to 2n is
    classified: a profile with a degree-zero factor integrates to zero
    (complete binomial alternation, since at most m-1 factors can have
    degree zero); a profile with more than 2d degree-one factors integrates
    to zero (one-forms pull back from the d-dimensional Albanese image).  A
    profile escaping both criteria is a non-torsion witness; the decision is
    torsion exactly when no profile escapes.
    """
    if n < 1 or not 0 <= d <= n or m < 1:
        raise ValueError("need n >= 1, 0 <= d <= n, m >= 1")
    if m <= n:
        return TorsionDecision(
            m, n, d, torsion=False,
            reason="pairs nonzero against hyperplane powers (m <= n)")
    zero_degree = 0
    many_ones = 0
    witness: tuple[int, ...] | None = None
    for profile in _degree_profiles(m, 2 * n):
        s = sum(1 for v in profile if v == 0)
        t = sum(1 for v in profile if v == 1)
        if s > 0:
            # s <= m-1 because the degrees sum to 2n > 0, so the
            # alternating binomial sum is complete and vanishes
            assert s <= m - 1 and integral_coefficient(m, s) == 0
            zero_degree += 1
        elif t > 2 * d:
            many_ones += 1
        elif witness is None:
            witness = profile
    cases = {"zero_degree_factor": zero_degree, "excess_one_forms": many_ones}
    if witness is None:
        return TorsionDecision(m, n, d, torsion=True,
                               reason="every degree profile integrates to zero",
                               vanishing_cases=cases)
    # preferred witness: 2(m-n) one-forms and the rest two-forms, which
    # escapes both vanishing criteria throughout the band n < m <= n+d
    excess = m - n
    if m - 2 * excess >= 0 and 2 * excess <= 2 * d:
        canonical = tuple([2] * (m - 2 * excess) + [1] * (2 * excess))
        assert sum(canonical) == 2 * n
        witness = canonical
    return TorsionDecision(m, n, d, torsion=False,
                           reason="degree profile with nonzero integral exists",
                           witness_profile=witness,
                           vanishing_cases=cases)
