"""Survivor counts, growth exponents, and the liminf constants.

mu(k) counts the level-k n-ary intervals in the interval or potential
case; it starts at 1 and multiplies by the transition factor of the
current state at every digit.  nu(k) = log_m mu(k).  The three derived
quantities

  beta = liminf nu(k)/k            (normalized growth exponent)
  L    = liminf m**(nu(k) - k*beta)
  L~   = liminf mu(k) * (component length at level k)**s,  s = beta*log_n(m)

bracket the s-dimensional Hausdorff measure of the intersection between
m**-beta * L and min(L~, L).

For eventually periodic translations everything is exact: the pair
(position inside the period, automaton state) must repeat, mu multiplies
by a fixed integer P over each cycle of length p, so beta = log_m(P)/p
and both liminfs reduce to exact minima over a single cycle.  Aperiodic
digit streams only admit horizon-limited estimates, computed here with
the same integer comparisons and labelled as estimates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath
from mpmath import mp

from .digits import DigitSet, NaryExpansion
from .errors import (
    AperiodicInput,
    DeadCycle,
    SimultaneousStateEncountered,
    StateNotCounted,
    ValidationError,
)
from .exactvals import ExactLogValue, GrowthExponent, exact_min
from .transition import CaseState, DigitStream, sigma_step, survivor_factor

_I = CaseState.INTERVAL
_P = CaseState.POTENTIAL
_S = CaseState.SIMULTANEOUS
_D = CaseState.IRRECOVERABLE


@dataclass(frozen=True)
class CountingProfile:
    """Per-level record of digit, state, factor, survivor count, and
    component length, up to a horizon K.

    ells[k] is the exact length of every intersection component at level k
    (None when the state is not +-1 or when t has no exact value, e.g. a
    bare digit stream, or t - trunc_k(t) = 0 for a terminating t).
    """

    digit_set: DigitSet
    horizon: int
    digits: tuple[int, ...]
    states: tuple[CaseState, ...]
    factors: tuple[int, ...]
    mus: tuple[int, ...]
    ells: tuple[Fraction | None, ...]
    value: Fraction | None

    def mu(self, k: int) -> int:
        return self.mus[k]

    def state(self, k: int) -> CaseState:
        return self.states[k]

    def first_dead_level(self) -> int | None:
        for k, s in enumerate(self.states):
            if s is _D:
                return k
        return None


def mu_profile(
    t: NaryExpansion | DigitStream | Fraction | int,
    K: int,
    ds: DigitSet,
) -> CountingProfile:
    """Run the survivor recursion through the first K digits of t.

    Raises SimultaneousStateEncountered at the first level whose state is
    SIMULTANEOUS: the recursion has no meaning there and the geometry
    oracle is the only authority.
    """
    if K < 0:
        raise ValidationError("horizon must be >= 0")
    t = _coerce_digits(t, ds)
    value = t.value if isinstance(t, NaryExpansion) else None

    states = [_I]
    digits: list[int] = []
    factors = [1]
    mus = [1]
    ells: list[Fraction | None] = [None]
    n = ds.base
    for k in range(1, K + 1):
        h = t.digit_at(k)
        prev = states[-1]
        if prev is _S:
            raise SimultaneousStateEncountered(k - 1)
        f = survivor_factor(prev, h, ds)
        state = sigma_step(prev, h, ds)
        digits.append(h)
        states.append(state)
        factors.append(f)
        mus.append(mus[-1] * f)
        ells.append(_ell_or_none(value, k, n, state))
    if states[-1] is _S:
        raise SimultaneousStateEncountered(K)
    return CountingProfile(
        ds, K, tuple(digits), tuple(states), tuple(factors), tuple(mus),
        tuple(ells), value,
    )


def _coerce_digits(t, ds: DigitSet):
    from .digits import as_expansion

    if isinstance(t, NaryExpansion):
        return as_expansion(t, ds.base)
    if isinstance(t, (Fraction, int)):
        return as_expansion(Fraction(t), ds.base)
    if t.base != ds.base:
        raise ValidationError(f"stream base {t.base} does not match n={ds.base}")
    return t


def _ell_or_none(value: Fraction | None, k: int, n: int, state: CaseState):
    if value is None:
        return None
    tail = value - _truncation(value, k, n)
    if tail == 0:
        return None
    if state is _I:
        return Fraction(1, n**k) - tail
    if state is _P:
        return tail
    return None


def _truncation(value: Fraction, k: int, n: int) -> Fraction:
    scaled = value * n**k
    return Fraction(scaled.numerator // scaled.denominator, n**k)


def ell(
    t: NaryExpansion | Fraction, k: int, ds: DigitSet, sigma_state: CaseState
) -> Fraction:
    """Exact component length at level k:  n**-k - (t - trunc_k) in the
    interval case, t - trunc_k in the potential case."""
    if sigma_state not in (_I, _P):
        raise StateNotCounted("component length defined only for states +-1")
    value = t.value if isinstance(t, NaryExpansion) else Fraction(t)
    tail = value - _truncation(value, k, ds.base)
    if tail == 0:
        raise StateNotCounted("terminating translation: level has no proper tail")
    return Fraction(1, ds.base**k) - tail if sigma_state is _I else tail


@dataclass(frozen=True)
class NuValue:
    """nu(k) = log_m mu(k): exact integer mu plus a numeric rendering."""

    mu: int
    m: int
    is_neg_infinity: bool

    def numeric(self, precision: int = 50) -> mpmath.mpf:
        if self.is_neg_infinity:
            return mpmath.mpf("-inf")
        with mp.workdps(precision + 10):
            return +(mpmath.log(self.mu) / mpmath.log(self.m))


def nu(profile: CountingProfile, k: int) -> NuValue:
    if k > profile.horizon:
        raise ValidationError(f"k={k} beyond horizon {profile.horizon}")
    mu_k = profile.mus[k]
    return NuValue(mu_k, profile.digit_set.m, mu_k == 0)


# ---------------------------------------------------------------------------
# Exact cycle analysis for eventually periodic translations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CycleInfo:
    """The detected cycle of (period position, state) pairs.

    After the transient of length k0, mu(k + p) = mu(k) * P, so the
    exponent nu(k) - k*beta is p-periodic there and every liminf is a
    minimum over the recorded witnesses (k, mu(k)), k0 < k <= k0 + p.
    ell_units[i] is the component length at witness i scaled by n**k
    (constant along each residue class, which makes L~ a finite min too).
    """

    digit_set: DigitSet
    preperiod_len: int
    cycle_len: int
    cycle_product: int
    witnesses: tuple[tuple[int, int], ...]
    ell_units: tuple[Fraction, ...]
    dead: bool = False
    death_level: int | None = None

    @property
    def exponent(self) -> GrowthExponent:
        if self.dead:
            raise DeadCycle("survivor count dies; growth exponent undefined")
        ds = self.digit_set
        return GrowthExponent(ds.base, ds.m, self.cycle_product, self.cycle_len)


def cycle_analysis(t: NaryExpansion, ds: DigitSet) -> CycleInfo:
    """Detect the (period position, state) cycle and its factor product."""
    t = _coerce_digits(t, ds)
    if not isinstance(t, NaryExpansion):
        raise AperiodicInput("exact cycle analysis needs an eventually periodic t")
    if t.is_finite or set(t.period) == {0}:
        raise AperiodicInput("terminating expansion: no cycle to analyze")
    pre_len = len(t.preperiod)
    q = len(t.period)
    guard = pre_len + 4 * q + 1

    state = _I
    mus = [1]
    seen: dict[tuple[int, CaseState], int] = {}
    k = 0
    while True:
        if k >= pre_len:
            key = ((k - pre_len) % q, state)
            if key in seen:
                k0 = seen[key]
                p = k - k0
                break
            seen[key] = k
        if state is _S:
            raise SimultaneousStateEncountered(k)
        h = t.digit_at(k + 1)
        f = survivor_factor(state, h, ds)
        state = sigma_step(state, h, ds)
        mus.append(mus[-1] * f)
        k += 1
        if state is _D:
            return CycleInfo(ds, 0, 0, 0, (), (), dead=True, death_level=k)
        if k > guard:
            raise AssertionError("cycle detection exceeded its guard bound")

    P = mus[k0 + p] // mus[k0]
    witnesses = tuple((j, mus[j]) for j in range(k0 + 1, k0 + p + 1))
    n = ds.base
    value = t.value
    # second pass collects the scaled component lengths over the witness window
    trace_state = _I
    ell_units: list[Fraction] = []
    for j in range(1, k0 + p + 1):
        trace_state = sigma_step(trace_state, t.digit_at(j), ds)
        if j > k0:
            tail = value - t.truncate(j)
            unit = (1 - tail * n**j) if trace_state is _I else tail * n**j
            ell_units.append(Fraction(unit))
    return CycleInfo(ds, k0, p, P, witnesses, tuple(ell_units))


def beta(t: NaryExpansion, ds: DigitSet) -> GrowthExponent:
    """Exact growth exponent beta = log_m(P)/p of an eventually periodic t."""
    return cycle_analysis(t, ds).exponent


def _witness_values(info: CycleInfo, bases: list[Fraction]) -> list[ExactLogValue]:
    exp = info.exponent
    return [
        ExactLogValue(Fraction(mu_k), b, exp)
        for (_, mu_k), b in zip(info.witnesses, bases)
    ]


def L_liminf(t: NaryExpansion, ds: DigitSet) -> ExactLogValue:
    """L = liminf m**(nu(k)-k*beta): the exact minimum over one cycle.

    Each candidate is mu(k) * (n**-k)**s; candidates share the exponent, so
    the minimum is an integer cross-power comparison.
    """
    info = cycle_analysis(t, ds)
    if info.dead:
        return ExactLogValue.zero()
    n = ds.base
    bases = [Fraction(1, n**k) for k, _ in info.witnesses]
    return exact_min(_witness_values(info, bases))


def L_tilde(t: NaryExpansion, ds: DigitSet) -> ExactLogValue:
    """Refined upper constant: liminf mu(k) * (component length)**s.

    The component length scaled by n**k is eventually p-periodic (it is
    1 - frac(n**k t) or frac(n**k t) by state), so this liminf is again a
    finite minimum over the cycle witnesses.
    """
    info = cycle_analysis(t, ds)
    if info.dead:
        return ExactLogValue.zero()
    n = ds.base
    bases = [
        unit * Fraction(1, n**k)
        for (k, _), unit in zip(info.witnesses, info.ell_units)
    ]
    return exact_min(_witness_values(info, bases))


# ---------------------------------------------------------------------------
# Horizon-limited estimates for aperiodic digit streams
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HorizonEstimate:
    """Running-minimum estimates over the window [K/2, K]; not a proof.

    The exponent trend compares window quarters: "decreasing" means fresh
    minima keep appearing late (consistent with L -> 0), "increasing" the
    opposite (consistent with L -> infinity).
    """

    horizon: int
    dead_level: int | None
    beta_argmin: int | None
    beta_mu: int | None
    L_argmin: int | None
    L_mu: int | None
    trend: str
    horizon_limited: bool = True

    def beta_numeric(self, m: int, precision: int = 50) -> mpmath.mpf:
        if self.beta_argmin is None:
            return mpmath.mpf("nan")
        with mp.workdps(precision + 10):
            return +(mpmath.log(self.beta_mu) / (self.beta_argmin * mpmath.log(m)))


def _cmp_nu_ratio(mu1: int, k1: int, mu2: int, k2: int) -> int:
    """Compare nu(k1)/k1 with nu(k2)/k2 via mu1**k2 vs mu2**k1."""
    a, b = mu1**k2, mu2**k1
    return (a > b) - (a < b)


def _cmp_exponent(mu1: int, k1: int, mu2: int, k2: int, exp: GrowthExponent) -> int:
    """Compare m**(nu(k)-k*beta) terms: mu1**p * P**k2 vs mu2**p * P**k1."""
    a = mu1**exp.p * exp.P**k2
    b = mu2**exp.p * exp.P**k1
    return (a > b) - (a < b)


def horizon_estimates(
    t: DigitStream | NaryExpansion,
    K: int,
    ds: DigitSet,
    exponent: GrowthExponent | None = None,
) -> HorizonEstimate:
    """Estimate beta and the L-exponent over the window [K/2, K].

    When a closed-form exponent is supplied (e.g. from the construction of
    the stream) the trend is measured against it; otherwise against the
    window's own argmin, which can mask slow drifts.
    """
    if K < 8:
        raise ValidationError("horizon estimates need K >= 8")
    profile = mu_profile(t, K, ds)
    dead = profile.first_dead_level()
    if dead is not None:
        return HorizonEstimate(K, dead, None, None, None, None, "dead")
    lo = max(1, K // 2)
    window = list(range(lo, K + 1))
    b_best = window[0]
    for k in window[1:]:
        if _cmp_nu_ratio(profile.mus[k], k, profile.mus[b_best], b_best) < 0:
            b_best = k
    exp = exponent or GrowthExponent(ds.base, ds.m, profile.mus[b_best], b_best)

    def window_min(ks: list[int]) -> int:
        best = ks[0]
        for k in ks[1:]:
            if _cmp_exponent(profile.mus[k], k, profile.mus[best], best, exp) < 0:
                best = k
        return best

    l_best = window_min(window)
    mid = lo + len(window) // 2
    first, second = window_min(list(range(lo, mid))), window_min(list(range(mid, K + 1)))
    c = _cmp_exponent(
        profile.mus[second], second, profile.mus[first], first, exp
    )
    trend = "decreasing" if c < 0 else ("increasing" if c > 0 else "stable")
    return HorizonEstimate(
        K, None, b_best, profile.mus[b_best], l_best, profile.mus[l_best], trend
    )


# ---------------------------------------------------------------------------
# Closed-form edited streams
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EditedPeriodicStream:
    """A periodic digit stream with sparse closed-form digit edits.

    Edits at positions position_rule(1) < position_rule(2) < ... replace
    the base digit with `replacement`.  When the edit positions thin out
    (quadratic spacing, say) the growth exponent of the base translation
    survives the edits; constructions of that kind may declare their
    exact exponent and the closed-form fate of the liminf ("zero" or
    "infinite"), which downstream reports then state exactly, with the
    horizon data as corroboration.
    """

    base_expansion: NaryExpansion
    replacement: int
    position_rule: Callable[[int], int]
    declared_exponent: GrowthExponent | None = None
    declared_liminf: str | None = None  # "zero" | "infinite" | None
    label: str = ""

    @property
    def base(self) -> int:
        return self.base_expansion.base

    def is_edit(self, k: int) -> bool:
        j = 1
        while True:
            pos = self.position_rule(j)
            if pos == k:
                return True
            if pos > k:
                return False
            j += 1

    def digit_at(self, k: int) -> int:
        if self.is_edit(k):
            return self.replacement
        return self.base_expansion.digit_at(k)


def quadratic_edit_stream(
    base_expansion: NaryExpansion,
    replacement: int,
    scale: int,
    offset: int,
    declared_exponent: GrowthExponent | None = None,
    declared_liminf: str | None = None,
    label: str = "",
) -> EditedPeriodicStream:
    """Edits at positions offset + scale*j**2, j >= 1."""
    return EditedPeriodicStream(
        base_expansion,
        replacement,
        lambda j: offset + scale * j * j,
        declared_exponent,
        declared_liminf,
        label,
    )
