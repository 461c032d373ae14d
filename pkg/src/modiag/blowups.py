"""Coefficient combinatorics for blowing up along a center of codimension e.

After pulling the modified diagonal back through a blow-up, the excess
terms live on the exceptional locus and expand over pairs (J, K): a
diagonal subset J of size at most n-e on the center, and a multi-index K
of Chern degrees, one per coordinate, each at most e-1, summing to
n(e-1)-1.  The identity to verify is that for each pair the level
coefficients c_{J,K}(t) have vanishing alternating sum.  Two independent
routes compute the coefficients: a closed form, and a counting rule that
enumerates the subsets I contributing at each level.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .exactalg import binom


@dataclass(frozen=True)
class BlowupContext:
    """n: hypothesis order minus one on the ambient variety; e: codimension
    of the center, with 2 <= e <= n-1 so that subsets J exist."""

    n: int
    e: int

    def __post_init__(self):
        if self.e < 2:
            raise ValueError("codimension must be at least 2")
        if self.n - self.e < 1:
            raise ValueError("need n - e >= 1")

    @property
    def degree_sum(self) -> int:
        """Total Chern degree of every multi-index: n(e-1) - 1."""
        return self.n * (self.e - 1) - 1

    @property
    def tuple_length(self) -> int:
        return self.n + 1


def chern_multi_indices(ctx: BlowupContext) -> list[tuple[int, ...]]:
    """All (n+1)-tuples with entries in [0, e-1] summing to n(e-1)-1,
    lexicographic order."""
    cap = ctx.e - 1
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], remaining: int, slots: int):
        if slots == 0:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        low = max(0, remaining - cap * (slots - 1))
        high = min(cap, remaining)
        for v in range(low, high + 1):
            prefix.append(v)
            rec(prefix, remaining - v, slots - 1)
            prefix.pop()

    rec([], ctx.degree_sum, ctx.tuple_length)
    return out


def top_set(k: tuple[int, ...], ctx: BlowupContext) -> frozenset[int]:
    """Positions where the multi-index reaches the cap e-1 (1-based)."""
    return frozenset(i + 1 for i, v in enumerate(k) if v == ctx.e - 1)


def top_set_bound_holds(k: tuple[int, ...], ctx: BlowupContext) -> bool:
    """|T(K)| >= n+1-e: with fewer cap entries the degrees cannot reach the
    required sum."""
    return len(top_set(k, ctx)) >= ctx.n + 1 - ctx.e


def blowup_coefficient_closed(subset, k: tuple[int, ...], t: int,
                              ctx: BlowupContext) -> int:
    """Closed form: (-1)^(n-|J|-e) binom(t-|J|-1, n-|J|-e)
    binom(|T(K) n J^c|, n+1-t)."""
    subset = frozenset(subset)
    n, e = ctx.n, ctx.e
    j = len(subset)
    if not 1 <= j <= n - e:
        raise ValueError("subset size outside 1..n-e")
    if not 0 <= t <= n + 1:
        raise ValueError("level out of range")
    overlap = len(top_set(k, ctx) - subset)
    return ((-1) ** (n - j - e)) * binom(t - j - 1, n - j - e) * binom(overlap, n + 1 - t)


@lru_cache(maxsize=None)
def _subset_count(ground: int, size: int) -> int:
    """Number of size-``size`` subsets of a ``ground``-element set, counted
    by explicit enumeration (kept deliberately independent of binom)."""
    if size < 0 or size > ground:
        return 0
    return sum(1 for _ in itertools.combinations(range(ground), size))


def blowup_coefficient_brute(subset, k: tuple[int, ...], t: int,
                             ctx: BlowupContext) -> int:
    """Counting route for the level coefficients.

    Levels t <= n-e leave the center diagonal unreduced: the coefficient is
    1 exactly when J itself is the level subset and every coordinate off it
    carries the cap degree, i.e. |J| = t and J^c lies in T(K).  Levels
    t >= n+1-e reduce the center diagonal, so the coefficient is the signed
    reduction coefficient times the number of size-t subsets I with
    J inside I and I^c inside T(K) -- equivalently I^c inside T(K) n J^c --
    counted by enumeration.  The two regimes are adjacent and exhaustive.
    """
    subset = frozenset(subset)
    n, e = ctx.n, ctx.e
    j = len(subset)
    if not 1 <= j <= n - e:
        raise ValueError("subset size outside 1..n-e")
    if not 0 <= t <= n + 1:
        raise ValueError("level out of range")
    if t == 0:
        return 0
    top = top_set(k, ctx)
    if t <= n - e:
        complement = frozenset(range(1, n + 2)) - subset
        return 1 if (j == t and complement <= top) else 0
    assert t >= n + 1 - e, "level regimes failed to cover 0..n+1"
    count = _subset_count(len(top - subset), n + 1 - t)
    return ((-1) ** (n - e - j)) * binom(t - j - 1, t - n - 1 + e) * count


def _check_profile(subset: frozenset[int], k: tuple[int, ...],
                   ctx: BlowupContext) -> dict | None:
    n, e = ctx.n, ctx.e
    alternating = 0
    for t in range(0, n + 2):
        closed = blowup_coefficient_closed(subset, k, t, ctx)
        brute = blowup_coefficient_brute(subset, k, t, ctx)
        if closed != brute:
            return {"kind": "closed_vs_brute", "J": sorted(subset),
                    "K": list(k), "t": t, "closed": closed, "brute": brute}
        alternating += ((-1) ** t) * closed
    if alternating != 0:
        return {"kind": "alternating_sum", "J": sorted(subset),
                "K": list(k), "sum": alternating}
    overlap = len(top_set(k, ctx) - subset)
    degree = n - len(subset) - e
    if not degree < overlap:
        return {"kind": "degree_bound", "J": sorted(subset), "K": list(k),
                "poly_degree": degree, "overlap": overlap}
    return None


def _scan_indices(ctx: BlowupContext, indices: list[tuple[int, ...]]) -> list[dict]:
    """Failures over a slice of the multi-index list.

    Both coefficient routes depend on (J, K) only through |J| and
    |T(K) n J^c|, so each distinct profile is verified once and every
    concrete pair is classified against the verified profiles.
    """
    n, e = ctx.n, ctx.e
    failures: list[dict] = []
    checked: dict[tuple[int, int], dict | None] = {}
    universe = list(range(1, n + 2))
    for k in indices:
        top = top_set(k, ctx)
        if not top_set_bound_holds(k, ctx):
            failures.append({"kind": "top_set_bound", "K": list(k),
                             "top_size": len(top), "required": n + 1 - e})
        for j in range(1, n - e + 1):
            for subset_tuple in itertools.combinations(universe, j):
                subset = frozenset(subset_tuple)
                profile = (j, len(top - subset))
                if profile not in checked:
                    checked[profile] = _check_profile(subset, k, ctx)
                failure = checked[profile]
                if failure is not None:
                    failures.append(failure)
                    checked[profile] = None  # report each profile once
    return failures


def _scan_star(args) -> list[dict]:
    return _scan_indices(*args)


def blowup_failures(ctx: BlowupContext, jobs: int = 1) -> list[dict]:
    """Violations of the cap-count bound, the closed/brute agreement, the
    alternating-sum identity, or the degree bound behind the final
    polynomial argument.  Empty on every context (that is the theorem).

    With jobs > 1 the multi-index list is scanned in parallel slices;
    failures are normalized (sorted, de-duplicated) so the report does not
    depend on the slicing."""
    indices = chern_multi_indices(ctx)
    if jobs > 1 and len(indices) > 1:
        from concurrent.futures import ProcessPoolExecutor
        step = (len(indices) + jobs - 1) // jobs
        chunks = [indices[i:i + step] for i in range(0, len(indices), step)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan_star, [(ctx, chunk) for chunk in chunks]))
        failures = [f for part in parts for f in part]
    else:
        failures = _scan_indices(ctx, indices)
    import json
    unique = {json.dumps(f, sort_keys=True): f for f in failures}
    return [unique[k] for k in sorted(unique)]


def verify_blowup(ctx: BlowupContext, jobs: int = 1) -> bool:
    """Alternating sums vanish, closed and counting routes agree everywhere,
    and every multi-index satisfies the cap-count bound."""
    return not blowup_failures(ctx, jobs=jobs)
