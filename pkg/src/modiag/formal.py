"""Formal sums over symbolic cycle bases.

A :class:`FormalSum` is a sparse rational combination of hashable basis
keys.  The keys provided here name the diagonal-type classes the calculus
manipulates:

* :class:`SubsetClassKey` -- the locus where the coordinates in a subset I
  agree and every other coordinate sits at the basepoint;
* :class:`MarkedClassKey` -- the same with an auxiliary positive-codimension
  class riding one coordinate group;
* :class:`Pattern` -- for a variety with involution, the locus cut out by
  assigning each coordinate the basepoint, a free point, or its conjugate;
* :class:`OmegaBarKey` -- the full symmetrization of a pattern, recorded by
  its slot counts.

The two structural moves are :func:`push_forward` along a coordinate
assignment (slot substitution with dimension-drop rules) and
:func:`symmetrize` into the counts basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .exactalg import format_rational

# pattern slot values
BASE = 0
VAR = 1
VAR_CONJ = 2

_CONJ = {BASE: BASE, VAR: VAR_CONJ, VAR_CONJ: VAR}
_SLOT_CHAR = {BASE: "a", VAR: "x", VAR_CONJ: "y"}
_CHAR_SLOT = {v: k for k, v in _SLOT_CHAR.items()}

# marker states for MarkedClassKey
ON_DIAGONAL_GROUP = "on_diagonal_group"
ON_BASE_SLOT = "on_base_slot"
ABSENT = "absent"

# Standing hypotheses of the calculus: the underlying variety has positive
# dimension and marker classes have codimension >= 1.  The zero rules of
# push_forward are only valid under these, so they are recorded here.
STANDING_HYPOTHESES = {
    "variety_dimension_positive": True,
    "marker_codimension_positive": True,
}


@dataclass(frozen=True)
class Pattern:
    """Involution pattern on q coordinates, canonical under global conjugation.

    Two patterns differing by swapping VAR and VAR_CONJ everywhere cut out
    the same cycle (reparametrize the free point by the involution), so the
    constructor stores the lexicographic minimum of the pair, with
    BASE < VAR < VAR_CONJ.
    """

    slots: tuple[int, ...]

    def __post_init__(self):
        s = tuple(self.slots)
        if any(v not in (BASE, VAR, VAR_CONJ) for v in s):
            raise ValueError(f"bad pattern slots {s!r}")
        c = tuple(_CONJ[v] for v in s)
        object.__setattr__(self, "slots", min(s, c))

    @classmethod
    def from_string(cls, text: str) -> "Pattern":
        return cls(tuple(_CHAR_SLOT[ch] for ch in text))

    def to_string(self) -> str:
        return "".join(_SLOT_CHAR[v] for v in self.slots)

    @property
    def length(self) -> int:
        return len(self.slots)

    @property
    def counts(self) -> tuple[int, int, int]:
        s = self.slots
        return (s.count(BASE), s.count(VAR), s.count(VAR_CONJ))

    @property
    def is_all_base(self) -> bool:
        return all(v == BASE for v in self.slots)

    def permuted(self, perm: tuple[int, ...]) -> "Pattern":
        """Apply a coordinate permutation: slot i receives old slot perm[i]."""
        return Pattern(tuple(self.slots[perm[i]] for i in range(len(self.slots))))

    def sort_key(self):
        return ("pattern", self.slots)


@dataclass(frozen=True)
class SubsetClassKey:
    """Diagonal-type class: coordinates in ``subset`` agree, the rest sit at
    the basepoint.  The subset is nonempty (the all-basepoint class is not a
    basis element of the calculus)."""

    ambient: int
    subset: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "subset", frozenset(self.subset))
        if not self.subset:
            raise ValueError("subset class requires a nonempty subset")
        if not all(1 <= i <= self.ambient for i in self.subset):
            raise ValueError(f"subset {sorted(self.subset)} outside 1..{self.ambient}")

    def sort_key(self):
        return ("subset", self.ambient, tuple(sorted(self.subset)))

    def label(self) -> str:
        return "D[" + ",".join(map(str, sorted(self.subset))) + f"]@{self.ambient}"


@dataclass(frozen=True)
class MarkedClassKey:
    """Diagonal-type class carrying an auxiliary positive-codimension marker.

    marker == ON_DIAGONAL_GROUP: the marker rides the diagonal group (all of
    whose coordinates agree, so its position within the group is immaterial).
    marker == ON_BASE_SLOT: the marker multiplied a basepoint slot; such a
    key normalizes to the zero class whenever the marker has positive
    codimension.  marker == ABSENT behaves like a plain subset class.
    """

    ambient: int
    subset: frozenset[int]
    marker: str = ON_DIAGONAL_GROUP

    def __post_init__(self):
        object.__setattr__(self, "subset", frozenset(self.subset))
        if self.marker not in (ON_DIAGONAL_GROUP, ON_BASE_SLOT, ABSENT):
            raise ValueError(f"unknown marker state {self.marker!r}")
        if self.marker == ON_DIAGONAL_GROUP and not self.subset:
            raise ValueError("a diagonal-group marker needs a nonempty subset")
        if not all(1 <= i <= self.ambient for i in self.subset):
            raise ValueError(f"subset {sorted(self.subset)} outside 1..{self.ambient}")

    def sort_key(self):
        return ("marked", self.ambient, tuple(sorted(self.subset)), self.marker)

    def label(self) -> str:
        return "Z[" + ",".join(map(str, sorted(self.subset))) + f"]@{self.ambient}"


@dataclass(frozen=True)
class OmegaBarKey:
    """Symmetrized pattern class, recorded as slot counts (r, s, t).

    r counts basepoint slots, s and t the free point and its conjugate;
    the constructor normalizes to s >= t (the two orderings name the same
    cycle).  (r, 0, 0) is the zero class and is never stored in sums.
    """

    base_count: int
    var_count: int
    conj_count: int

    def __post_init__(self):
        if min(self.base_count, self.var_count, self.conj_count) < 0:
            raise ValueError("counts must be nonnegative")
        if self.var_count < self.conj_count:
            s, t = self.conj_count, self.var_count
            object.__setattr__(self, "var_count", s)
            object.__setattr__(self, "conj_count", t)

    @property
    def total(self) -> int:
        return self.base_count + self.var_count + self.conj_count

    @property
    def is_zero_class(self) -> bool:
        return self.var_count == 0 and self.conj_count == 0

    def label(self) -> str:
        return f"({self.base_count},{self.var_count},{self.conj_count})"

    def sort_key(self):
        return ("omegabar", self.base_count, self.var_count, self.conj_count)


@dataclass(frozen=True)
class Assignment:
    """Coordinate assignment building a map X^m -> X^N.

    Entry encoding per target slot: 0 places the basepoint, +j copies source
    coordinate j, -j copies the conjugate of source coordinate j.
    """

    target_size: int
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if len(self.entries) != self.target_size:
            raise ValueError("entry count must equal target_size")

    @classmethod
    def appending(cls, m: int, tail: Iterable[int]) -> "Assignment":
        """Identity on the first m slots, then the given tail entries."""
        entries = tuple(range(1, m + 1)) + tuple(tail)
        return cls(len(entries), entries)

    def check_sources(self, m: int, allow_conjugation: bool = True) -> None:
        for e in self.entries:
            if e == 0:
                continue
            if not allow_conjugation and e < 0:
                raise ValueError("conjugating entries not allowed for this basis")
            if not 1 <= abs(e) <= m:
                raise ValueError(f"assignment entry {e} references no source in 1..{m}")


class FormalSum:
    """Sparse rational linear combination of basis keys.

    Zero coefficients are never stored; addition, scalar multiplication and
    equality are exact and key-wise.  Instances are treated as immutable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable[tuple] | None = None):
        data: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for key, coeff in items:
                c = data.get(key, Fraction(0)) + Fraction(coeff)
                if c:
                    data[key] = c
                else:
                    data.pop(key, None)
        self._terms = data

    @classmethod
    def zero(cls) -> "FormalSum":
        return cls()

    @classmethod
    def of(cls, key, coeff=1) -> "FormalSum":
        return cls([(key, coeff)])

    def items(self):
        return self._terms.items()

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def keys(self):
        return self._terms.keys()

    def coefficient(self, key) -> Fraction:
        return self._terms.get(key, Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "FormalSum") -> "FormalSum":
        out = dict(self._terms)
        for key, coeff in other._terms.items():
            c = out.get(key, Fraction(0)) + coeff
            if c:
                out[key] = c
            else:
                out.pop(key, None)
        result = FormalSum.__new__(FormalSum)
        result._terms = out
        return result

    def __neg__(self) -> "FormalSum":
        result = FormalSum.__new__(FormalSum)
        result._terms = {k: -v for k, v in self._terms.items()}
        return result

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + (-other)

    def __mul__(self, scalar) -> "FormalSum":
        c = Fraction(scalar)
        result = FormalSum.__new__(FormalSum)
        result._terms = {} if c == 0 else {k: v * c for k, v in self._terms.items()}
        return result

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalSum) and self._terms == other._terms

    def __hash__(self):
        return hash(self.frozen())

    def frozen(self) -> tuple:
        return tuple((k.sort_key(), v) for k, v in self.sorted_items())

    def map_keys(self, fn: Callable) -> "FormalSum":
        """Linear extension of a key map; fn returns a key or None (zero)."""
        out: dict = {}
        for key, coeff in self._terms.items():
            new = fn(key)
            if new is None:
                continue
            c = out.get(new, Fraction(0)) + coeff
            if c:
                out[new] = c
            else:
                out.pop(new, None)
        result = FormalSum.__new__(FormalSum)
        result._terms = out
        return result

    def to_json_obj(self) -> list:
        return [[_key_json(k), format_rational(v)] for k, v in self.sorted_items()]

    def __repr__(self) -> str:
        if not self._terms:
            return "FormalSum(0)"
        bits = []
        for key, coeff in self.sorted_items():
            name = key.label() if hasattr(key, "label") else key.to_string()
            bits.append(f"{format_rational(coeff)}*{name}")
        return "FormalSum(" + " + ".join(bits) + ")"


def _key_json(key):
    if isinstance(key, Pattern):
        return key.to_string()
    if isinstance(key, (SubsetClassKey, MarkedClassKey)):
        return key.label()
    if isinstance(key, OmegaBarKey):
        return key.label()
    return repr(key)


def _push_pattern(key: Pattern, a: Assignment) -> Pattern | None:
    m = key.length
    a.check_sources(m)
    image = []
    for e in a.entries:
        if e == 0:
            image.append(BASE)
        elif e > 0:
            image.append(key.slots[e - 1])
        else:
            image.append(_CONJ[key.slots[-e - 1]])
    pat = Pattern(tuple(image))
    if pat.is_all_base:
        return None  # the free point appears nowhere: the image is a point
    return pat


def _image_subset(subset: frozenset[int], a: Assignment) -> frozenset[int]:
    return frozenset(
        pos + 1 for pos, e in enumerate(a.entries) if e > 0 and e in subset
    )


def push_forward(total: FormalSum, a: Assignment) -> FormalSum:
    """Push a formal sum forward along a coordinate assignment.

    Each basis term maps by slot substitution, with multiplicity one for
    every surviving term.  A term becomes zero when the image loses the free
    point entirely (the cycle collapses to a point), and a marked term
    additionally becomes zero when its whole diagonal group is dropped (the
    marker integrates out); both rules assume the standing hypotheses
    recorded in STANDING_HYPOTHESES.  For a surviving marked term the marker
    rides the image diagonal group: all coordinates of the group agree, so
    no specific slot needs to be remembered.
    """
    out: dict = {}

    def emit(key, coeff):
        c = out.get(key, Fraction(0)) + coeff
        if c:
            out[key] = c
        else:
            out.pop(key, None)

    for key, coeff in total.items():
        if isinstance(key, Pattern):
            image = _push_pattern(key, a)
            if image is not None:
                emit(image, coeff)
        elif isinstance(key, SubsetClassKey):
            a.check_sources(key.ambient, allow_conjugation=False)
            img = _image_subset(key.subset, a)
            if img:
                emit(SubsetClassKey(a.target_size, img), coeff)
        elif isinstance(key, MarkedClassKey):
            a.check_sources(key.ambient, allow_conjugation=False)
            img = _image_subset(key.subset, a)
            if key.marker == ON_DIAGONAL_GROUP:
                if img:
                    emit(MarkedClassKey(a.target_size, img, ON_DIAGONAL_GROUP), coeff)
                # else: the marked group is dropped; the image sits over a
                # point with the marker integrated out, zero for a
                # positive-codimension marker.
            elif key.marker == ABSENT:
                if img:
                    emit(MarkedClassKey(a.target_size, img, ABSENT), coeff)
            else:  # ON_BASE_SLOT: already a zero class under the standing
                # hypotheses; keep the formal symbol only if the subset survives.
                if img or not key.subset:
                    emit(MarkedClassKey(a.target_size, img, ON_BASE_SLOT), coeff)
        else:
            raise TypeError(f"cannot push forward key of type {type(key).__name__}")
    result = FormalSum.__new__(FormalSum)
    result._terms = out
    return result


def symmetrize(total: FormalSum) -> FormalSum:
    """Sum over all coordinate permutations, in the counts basis.

    The full symmetrization of a single pattern with counts (r, s, t) is by
    definition the counts class with those numbers, so each pattern term
    maps to exactly one OmegaBarKey with coefficient unchanged.
    """
    out: dict = {}
    for key, coeff in total.items():
        if not isinstance(key, Pattern):
            raise TypeError("symmetrize expects a sum of patterns")
        r, s, t = key.counts
        bar = OmegaBarKey(r, s, t)
        if bar.is_zero_class:
            continue
        c = out.get(bar, Fraction(0)) + coeff
        if c:
            out[bar] = c
        else:
            out.pop(bar, None)
    result = FormalSum.__new__(FormalSum)
    result._terms = out
    return result


def subset_to_pattern(key: SubsetClassKey) -> Pattern:
    """Positions in the subset become the free point, the rest the basepoint."""
    return Pattern(tuple(VAR if i in key.subset else BASE
                         for i in range(1, key.ambient + 1)))


def all_patterns(length: int, include_all_base: bool = False):
    """All conjugation-canonical patterns of the given length, sorted."""
    seen = set()
    for slots in itertools.product((BASE, VAR, VAR_CONJ), repeat=length):
        pat = Pattern(slots)
        if pat.is_all_base and not include_all_base:
            continue
        seen.add(pat)
    return sorted(seen, key=lambda p: p.slots)


class KeyIndex:
    """Stable interning of basis keys as integer coordinates."""

    def __init__(self):
        self._index: dict = {}
        self._keys: list = []

    def index_of(self, key) -> int:
        idx = self._index.get(key)
        if idx is None:
            idx = len(self._keys)
            self._index[key] = idx
            self._keys.append(key)
        return idx

    def key_of(self, idx: int):
        return self._keys[idx]

    def encode(self, total: FormalSum) -> dict[int, Fraction]:
        return {self.index_of(k): v for k, v in total.items()}

    def decode(self, vec: Mapping[int, Fraction]) -> FormalSum:
        return FormalSum([(self._keys[i], v) for i, v in vec.items()])
