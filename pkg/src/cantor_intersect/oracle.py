"""Ground-truth enumeration of level sets and their shifted intersections.

Level k of the construction is a disjoint union of m**k n-ary intervals
[h/n**k, (h+1)/n**k]; the offsets h are exactly the k-digit strings over
D read as base-n integers.  Because the truncated translation has
denominator n**k, shifting is integer addition on offsets, and the four
positional cases are plain membership questions:

  interval          h is itself a shifted offset
  potential         h - 1 is            (abuts a shifted interval on the left)
  potentially empty h + 1 is            (abuts one on the right)
  empty             none of the above

Everything here is exact integer / rational arithmetic.  A numpy fast
path accelerates bulk counting when offsets fit machine words; it is
checked against the set-based path in the tests and falls back
automatically otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .counting import mu_profile
from .digits import DigitSet, NaryExpansion, as_expansion
from .errors import ANotEmpty, LevelTooLarge, NotFinite, ValidationError
from .transition import CaseState

DEFAULT_CAP = 10**6

_NP_SAFE_LIMIT = 2**61  # offsets plus shift must stay well inside int64


def _check_cap(ds: DigitSet, k: int, cap: int) -> None:
    if ds.m**k > cap:
        raise LevelTooLarge(
            f"level {k} holds {ds.m}**{k} intervals, over the cap {cap}"
        )


@dataclass(frozen=True)
class LevelSet:
    """The m**k interval offsets of level k, sorted ascending."""

    base: int
    level: int
    offsets: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.offsets)


def build_level(ds: DigitSet, k: int, cap: int = DEFAULT_CAP) -> LevelSet:
    """Offsets of level k: all k-digit D-strings as base-n integers."""
    _check_cap(ds, k, cap)
    offsets = [0]
    for _ in range(k):
        offsets = [n_h + d for n_h in (h * ds.base for h in offsets) for d in ds.digits]
    return LevelSet(ds.base, k, tuple(offsets))


def refine(ls: LevelSet, ds: DigitSet, cap: int = DEFAULT_CAP) -> LevelSet:
    """One refinement step: offset h becomes {n*h + d : d in D}."""
    if ls.base != ds.base:
        raise ValidationError("level set base does not match the digit set")
    if len(ls.offsets) * ds.m > cap:
        raise LevelTooLarge(f"refinement exceeds the cap {cap}")
    offsets = [h * ds.base + d for h in ls.offsets for d in ds.digits]
    return LevelSet(ls.base, ls.level + 1, tuple(offsets))


@dataclass(frozen=True)
class IntervalClassification:
    """Case flags for every offset of a level against a shifted copy."""

    level: int
    shift: int  # numerator of the truncated translation over n**level
    offsets: tuple[int, ...]
    interval_offsets: frozenset[int]
    potential_offsets: frozenset[int]
    potentially_empty_offsets: frozenset[int]

    def empty_offsets(self) -> tuple[int, ...]:
        covered = (
            self.interval_offsets
            | self.potential_offsets
            | self.potentially_empty_offsets
        )
        return tuple(h for h in self.offsets if h not in covered)

    def flags(self, h: int) -> tuple[bool, bool, bool, bool]:
        a = h in self.interval_offsets
        b = h in self.potential_offsets
        c = h in self.potentially_empty_offsets
        return (a, b, c, not (a or b or c))


@dataclass(frozen=True)
class OracleCounts:
    interval: int
    potential: int
    potentially_empty: int
    empty: int


def classify_intervals(
    ds: DigitSet,
    t: NaryExpansion | Fraction | int,
    k: int,
    cap: int = DEFAULT_CAP,
) -> IntervalClassification:
    """Classify every level-k offset against the truncated translate."""
    _check_cap(ds, k, cap)
    e = as_expansion(t, ds.base)
    shift = e.shift_numerator(k)
    offsets = build_level(ds, k, cap).offsets
    s = set(offsets)
    shifted = {h + shift for h in offsets}
    return IntervalClassification(
        k,
        shift,
        offsets,
        frozenset(s & shifted),
        frozenset(h for h in s if h - 1 in shifted),
        frozenset(h for h in s if h + 1 in shifted),
    )


def counts_of(cls: IntervalClassification) -> OracleCounts:
    return OracleCounts(
        len(cls.interval_offsets),
        len(cls.potential_offsets),
        len(cls.potentially_empty_offsets),
        len(cls.empty_offsets()),
    )


def oracle_counts(
    ds: DigitSet,
    t: NaryExpansion | Fraction | int,
    k: int,
    cap: int = DEFAULT_CAP,
) -> OracleCounts:
    """Case tallies at level k (numpy-accelerated when offsets fit int64)."""
    _check_cap(ds, k, cap)
    e = as_expansion(t, ds.base)
    if ds.base**k < _NP_SAFE_LIMIT:
        return _np_counts(ds, e, k)
    return counts_of(classify_intervals(ds, e, k, cap))


def _np_level(ds: DigitSet, k: int) -> np.ndarray:
    offsets = np.zeros(1, dtype=np.int64)
    digits = np.array(ds.digits, dtype=np.int64)
    for _ in range(k):
        offsets = (offsets[:, None] * ds.base + digits[None, :]).ravel()
    return offsets


def _np_counts(ds: DigitSet, e: NaryExpansion, k: int) -> OracleCounts:
    s = _np_level(ds, k)
    shift = e.shift_numerator(k)
    m_interval = _np_membership(s, s + shift)
    m_potential = _np_membership(s, s + (shift + 1))
    m_pot_empty = _np_membership(s, s + (shift - 1))
    covered = m_interval | m_potential | m_pot_empty
    return OracleCounts(
        int(m_interval.sum()),
        int(m_potential.sum()),
        int(m_pot_empty.sum()),
        int(len(s) - covered.sum()),
    )


def _np_membership(sorted_values: np.ndarray, sorted_targets: np.ndarray) -> np.ndarray:
    idx = np.searchsorted(sorted_targets, sorted_values)
    idx = np.minimum(idx, len(sorted_targets) - 1)
    return sorted_targets[idx] == sorted_values


def oracle_count_series(
    ds: DigitSet,
    t: NaryExpansion | Fraction | int,
    k_max: int,
    cap: int = DEFAULT_CAP,
) -> list[OracleCounts]:
    """Counts for k = 0..k_max with incremental refinement (one pass)."""
    _check_cap(ds, k_max, cap)
    e = as_expansion(t, ds.base)
    out: list[OracleCounts] = []
    if ds.base**k_max < _NP_SAFE_LIMIT:
        s = np.zeros(1, dtype=np.int64)
        digits = np.array(ds.digits, dtype=np.int64)
        shift = 0
        for k in range(k_max + 1):
            if k > 0:
                s = (s[:, None] * ds.base + digits[None, :]).ravel()
                shift = shift * ds.base + e.digit_at(k)
            m_i = _np_membership(s, s + shift)
            m_p = _np_membership(s, s + (shift + 1))
            m_e = _np_membership(s, s + (shift - 1))
            covered = m_i | m_p | m_e
            out.append(
                OracleCounts(
                    int(m_i.sum()),
                    int(m_p.sum()),
                    int(m_e.sum()),
                    int(len(s) - covered.sum()),
                )
            )
        return out
    for k in range(k_max + 1):
        out.append(counts_of(classify_intervals(ds, e, k, cap)))
    return out


def intersect_exact(
    ds: DigitSet,
    t: Fraction | int,
    k: int,
    cap: int = DEFAULT_CAP,
) -> list[tuple[Fraction, Fraction]]:
    """Components of (level k) ∩ (level k + t) as exact closed intervals.

    Touching intervals merge into one component; degenerate single points
    are kept as [x, x].  Scaling by n**k * q keeps the sweep in integers.
    """
    _check_cap(ds, k, cap)
    t = Fraction(t)
    q = t.denominator
    nk = ds.base**k
    offsets = build_level(ds, k, cap).offsets
    a = [(h * q, (h + 1) * q) for h in offsets]
    shift = t.numerator * nk
    b = [(lo + shift, hi + shift) for (lo, hi) in a]
    components: list[list[int]] = []
    i = j = 0
    while i < len(a) and j < len(b):
        lo = max(a[i][0], b[j][0])
        hi = min(a[i][1], b[j][1])
        if lo <= hi:
            if components and components[-1][1] >= lo:
                components[-1][1] = max(components[-1][1], hi)
            else:
                components.append([lo, hi])
        if a[i][1] < b[j][1]:
            i += 1
        else:
            j += 1
    scale = nk * q
    return [(Fraction(lo, scale), Fraction(hi, scale)) for lo, hi in components]


@dataclass(frozen=True)
class FiniteDecomposition:
    """A ∪ B structure of the intersection for a terminating translation.

    A collects the offsets of interval-case intervals at the terminating
    depth (each contributes a scaled copy of the whole set); B collects
    the touching points contributed by the abutting cases, which exist
    only when the largest digit is n-1.  A and B need not be disjoint and
    are reported verbatim.
    """

    level: int
    a_offsets: tuple[int, ...]
    b_points: tuple[Fraction, ...]

    @property
    def is_empty(self) -> bool:
        return not self.a_offsets and not self.b_points


def finite_decomposition(
    ds: DigitSet,
    t: NaryExpansion | Fraction | int,
    cap: int = DEFAULT_CAP,
) -> FiniteDecomposition:
    """Decompose the intersection for terminating t at its canonical depth."""
    e = as_expansion(t, ds.base).canonical()
    if not e.is_finite:
        raise NotFinite("translation does not terminate")
    k = e.finite_length
    cls = classify_intervals(ds, e, k, cap)
    n = ds.base
    points: list[Fraction] = []
    if ds.digits[-1] == n - 1:
        nk = n**k
        for h in sorted(cls.potential_offsets):
            points.append(Fraction(h, nk))
        for h in sorted(cls.potentially_empty_offsets):
            points.append(Fraction(h + 1, nk))
    return FiniteDecomposition(
        k, tuple(sorted(cls.interval_offsets)), tuple(sorted(set(points)))
    )


def b_count_sparse(
    ds: DigitSet,
    t: NaryExpansion | Fraction | int,
    cap: int = DEFAULT_CAP,
) -> int:
    """Touching-point count for sparse sets via the survivor recursion.

    The abutting cases of t are the interval cases of t +- n**-k, so each
    shifted survivor count contributes -- but only while the shifted
    translation actually sits in the interval state at depth k: a shifted
    copy landing in the potential state counts interval cases of a further
    shift, which belong to nobody's touching points.  With the largest
    digit below n-1 no touching survives refinement at all.
    """
    if not ds.delta.sparse:
        raise ValidationError("touching-point formula applies to sparse sets")
    e = as_expansion(t, ds.base).canonical()
    if not e.is_finite:
        raise NotFinite("translation does not terminate")
    k = e.finite_length
    cls = classify_intervals(ds, e, k, cap)
    if cls.interval_offsets:
        raise ANotEmpty("interval cases present: use the copy count instead")
    if ds.digits[-1] != ds.base - 1:
        return 0
    total = 0
    step = Fraction(1, ds.base**k)
    for shifted in (e.value + step, e.value - step):
        profile = mu_profile(as_expansion(shifted, ds.base), k, ds)
        if profile.states[k] is CaseState.INTERVAL:
            total += profile.mus[k]
    return total
