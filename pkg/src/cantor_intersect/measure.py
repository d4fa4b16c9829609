"""Measure bounds, dimension, membership, covers, and dense approximants.

The headline facts assembled here, for a sparse digit set and a
translation t whose intersection with the shifted set is nonempty:

  * t non-terminating:  m**-beta * L  <=  H^s  <=  min(L~, L)
    with s = beta*log_n(m) the Hausdorff dimension; if L is 0 or infinite
    the measure equals it exactly.
  * t terminating at depth k:  the intersection is a union of `a` scaled
    copies of the whole set plus finitely many touching points;
    a/m**(k+1) <= H^s <= a/m**k at s = log_n(m) when a > 0, and the
    measure in dimension 0 is the exact touching-point count otherwise.
  * the set itself:  1/m <= H^s(C) <= 1 at s = log_n(m).

Non-sparse digit sets get oracle-only reports: simultaneous levels make
the survivor count over-count, so formula bounds are suppressed there.

Membership in F = {t : the intersection is nonempty} is decided exactly
for every rational t: terminating translations by the finite
decomposition, repeating ones by running the case automaton around its
cycle (the intersection is a nested limit of nonempty compacts exactly
while the state stays nonzero).  Aperiodic streams are horizon-limited.

The cover optimizer generalizes the merged-run covers that witness
strict upper bounds: over all partitions of the level-k offsets into
consecutive blocks it minimizes the cost sum of (block width)**s by
dynamic programming, tie-breaking toward fewer blocks.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mp

from .counting import (
    HorizonEstimate,
    L_liminf,
    L_tilde,
    cycle_analysis,
    horizon_estimates,
    mu_profile,
)
from .digits import DigitSet, NaryExpansion, alternate_representation, as_expansion
from .errors import (
    BadBand,
    FiniteRepresentation,
    NonSparse,
    NotInF,
    ValidationError,
)
from .exactvals import ExactLogValue, GrowthExponent
from .oracle import (
    DEFAULT_CAP,
    FiniteDecomposition,
    OracleCounts,
    b_count_sparse,
    build_level,
    finite_decomposition,
    oracle_count_series,
)
from .transition import (
    CaseState,
    DigitStream,
    SigmaTrace,
    sigma_sequence,
    sigma_step as _sigma_step,
    survivor_factor as _survivor_factor,
)

_I = CaseState.INTERVAL
_P = CaseState.POTENTIAL
_S = CaseState.SIMULTANEOUS
_D = CaseState.IRRECOVERABLE


# ---------------------------------------------------------------------------
# Membership in F
# ---------------------------------------------------------------------------


class Verdict(enum.Enum):
    IN_F = "in_F"
    NOT_IN_F = "not_in_F"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class FMembership:
    verdict: Verdict
    horizon: int | None = None
    dead_level: int | None = None
    certificate: str = ""
    trace: SigmaTrace | None = None
    decomposition: FiniteDecomposition | None = None


def _cycle_survives(t: NaryExpansion, ds: DigitSet) -> tuple[bool, int | None, int]:
    """Does the automaton stay nonzero forever on this repeating expansion?

    Returns (alive, death_level, levels_checked).  The (period position,
    state) pair must repeat within preperiod + 4*period steps, so checking
    that window decides all k.
    """
    horizon = len(t.preperiod) + 4 * max(1, len(t.period)) + 1
    trace = sigma_sequence(t, horizon, ds)
    dead = trace.first_dead_level()
    return dead is None, dead, horizon


def in_F(
    t: NaryExpansion | Fraction | int | DigitStream,
    ds: DigitSet,
    K: int = 64,
) -> FMembership:
    """Decide whether the translated intersection is nonempty.

    Rational t is decided exactly; bare digit streams can only be refuted
    (a dead level empties the intersection) or left UNKNOWN at horizon K.
    """
    if isinstance(t, (Fraction, int, NaryExpansion)):
        e = as_expansion(t, ds.base)
        canon = e.canonical()
        if canon.is_finite:
            return _in_F_finite(canon, ds)
        alive, dead, horizon = _cycle_survives(canon, ds)
        if alive:
            return FMembership(
                Verdict.IN_F,
                horizon,
                certificate="automaton cycles without dying: nested nonempty compacts",
                trace=sigma_sequence(canon, horizon, ds),
            )
        return FMembership(
            Verdict.NOT_IN_F,
            horizon,
            dead_level=dead,
            certificate=f"all level-{dead} intervals are in the vanishing cases",
        )
    trace = sigma_sequence(t, K, ds)
    dead = trace.first_dead_level()
    if dead is not None:
        return FMembership(
            Verdict.NOT_IN_F, K, dead_level=dead,
            certificate=f"stream dies at level {dead}", trace=trace,
        )
    return FMembership(
        Verdict.UNKNOWN, K,
        certificate=f"alive through horizon {K}; no cycle certificate for a stream",
        trace=trace,
    )


def _in_F_finite(e: NaryExpansion, ds: DigitSet) -> FMembership:
    dec = finite_decomposition(ds, e)
    if ds.delta.sparse:
        # state-automaton route: canonical representation first, then the
        # repeating twin -- membership holds iff either survives forever.
        alive, dead, horizon = _cycle_survives(e, ds)
        if not alive and e.value > 0:
            twin = alternate_representation(e)
            alive, _, horizon = _cycle_survives(twin, ds)
            cert = "repeating twin survives" if alive else "both representations die"
        else:
            cert = "canonical representation survives" if alive else "dies"
        verdict = Verdict.IN_F if alive else Verdict.NOT_IN_F
        assert (verdict is Verdict.IN_F) == (not dec.is_empty), (
            "automaton and decomposition disagree on membership"
        )
        return FMembership(
            verdict, horizon, dead_level=dead, certificate=cert, decomposition=dec
        )
    verdict = Verdict.NOT_IN_F if dec.is_empty else Verdict.IN_F
    return FMembership(
        verdict,
        certificate="finite decomposition enumerated exactly",
        decomposition=dec,
    )


# ---------------------------------------------------------------------------
# Measure reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MeasureReport:
    """Dimension exponent plus the bracketing constants for one translation.

    `kind` selects which fields are populated:
      "infinite"   repeating non-terminating t: exact beta/L/L~ bounds
      "finite"     terminating t: copy count a, depth k, touching points
      "self"       t = 0: bounds for the set itself
      "nonsparse"  oracle-only report (no formula bounds)
      "stream"     horizon-limited or construction-declared stream report
    """

    kind: str
    digit_set: DigitSet
    translation_text: str
    exponent: GrowthExponent | None = None
    L: ExactLogValue | None = None
    L_tilde: ExactLogValue | None = None
    lower: ExactLogValue | None = None
    upper: ExactLogValue | None = None
    measure_exact: ExactLogValue | None = None
    copy_count: int | None = None
    depth: int | None = None
    touching_points: tuple[Fraction, ...] | None = None
    oracle_counts: tuple[OracleCounts, ...] | None = None
    horizon: HorizonEstimate | None = None
    flags: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)
    notes: tuple[str, ...] = ()


def measure_bounds_C(ds: DigitSet) -> tuple[Fraction, Fraction]:
    """1/m <= H^s(C) <= 1 at s = log_n(m)."""
    return (Fraction(1, ds.m), Fraction(1))


def _self_report(ds: DigitSet) -> MeasureReport:
    lo, hi = measure_bounds_C(ds)
    exp = GrowthExponent(ds.base, ds.m, ds.m, 1)  # s = log_n m, beta = 1
    return MeasureReport(
        kind="self",
        digit_set=ds,
        translation_text="0",
        exponent=exp,
        lower=ExactLogValue.from_rational(lo),
        upper=ExactLogValue.from_rational(hi),
        provenance={"bounds": "covering count of the construction levels"},
    )


def measure_bounds_finite_t(
    ds: DigitSet, t: NaryExpansion | Fraction | int, cap: int = DEFAULT_CAP
) -> MeasureReport:
    """Bounds for a terminating translation via its finite decomposition."""
    e = as_expansion(t, ds.base).canonical()
    if not e.is_finite:
        raise FiniteRepresentation("translation does not terminate")
    if e.value == 0:
        return _self_report(ds)
    dec = finite_decomposition(ds, e, cap)
    if dec.is_empty:
        raise NotInF(level=dec.level)
    k = dec.level
    notes: tuple[str, ...] = ()
    if dec.a_offsets:
        a = len(dec.a_offsets)
        if ds.delta.sparse:
            prof = mu_profile(e, k, ds)
            assert a == prof.mus[k], "copy count must equal the survivor count"
        exp = GrowthExponent(ds.base, ds.m, ds.m, 1)
        lo = Fraction(a, ds.m ** (k + 1))
        hi = Fraction(a, ds.m**k)
        return MeasureReport(
            kind="finite",
            digit_set=ds,
            translation_text=e.text(with_base=True),
            exponent=exp,
            lower=ExactLogValue.from_rational(lo),
            upper=ExactLogValue.from_rational(hi),
            copy_count=a,
            depth=k,
            touching_points=dec.b_points,
            provenance={
                "bounds": "copy count times the bounds for the whole set",
            },
            notes=notes,
        )
    count = len(dec.b_points)
    if ds.delta.sparse:
        formula = b_count_sparse(ds, e, cap)
        assert formula == count, "touching-point formula must match enumeration"
    return MeasureReport(
        kind="finite",
        digit_set=ds,
        translation_text=e.text(with_base=True),
        exponent=GrowthExponent(ds.base, ds.m, 1, 1),  # dimension 0
        measure_exact=ExactLogValue.from_rational(count),
        copy_count=0,
        depth=k,
        touching_points=dec.b_points,
        provenance={"measure": "counting measure of the touching points"},
    )


def measure_bounds(
    t: NaryExpansion | Fraction | int,
    ds: DigitSet,
    cap: int = DEFAULT_CAP,
) -> MeasureReport:
    """Exact bounds for a repeating, non-terminating translation.

    Requires a sparse digit set; terminating translations are refused here
    and belong on the finite path (see `measure_report` for the router).
    """
    if not ds.delta.sparse:
        raise NonSparse("formula-mode bounds require a sparse digit set")
    e = as_expansion(t, ds.base).canonical()
    if e.is_finite:
        raise FiniteRepresentation("terminating translation: use the finite path")
    membership = in_F(e, ds)
    if membership.verdict is Verdict.NOT_IN_F:
        raise NotInF(level=membership.dead_level)
    info = cycle_analysis(e, ds)
    exp = info.exponent
    L = L_liminf(e, ds)
    Lt = L_tilde(e, ds)
    upper = Lt if Lt.compare(L) <= 0 else L
    lower = L.base_scaled(Fraction(1, ds.base))  # multiply by m**-beta = (1/n)**s
    assert lower.compare(upper) <= 0, "bound ordering violated"
    return MeasureReport(
        kind="infinite",
        digit_set=ds,
        translation_text=e.text(with_base=True),
        exponent=exp,
        L=L,
        L_tilde=Lt,
        lower=lower,
        upper=upper,
        flags={"upper_not_tight": True},
        provenance={
            "lower": "packing argument against the surviving intervals",
            "upper": "refined covering by the literal intersection components",
        },
        notes=(
            "the true measure can sit strictly below the refined upper constant",
        ),
    )


def dimension(
    t: NaryExpansion | Fraction | int, ds: DigitSet, cap: int = DEFAULT_CAP
) -> GrowthExponent:
    """Hausdorff dimension exponent of the translated intersection."""
    e = as_expansion(t, ds.base).canonical()
    if e.is_finite:
        rep = measure_bounds_finite_t(ds, e, cap)
        assert rep.exponent is not None
        return rep.exponent
    if not ds.delta.sparse:
        raise NonSparse("dimension formula requires a sparse digit set")
    membership = in_F(e, ds)
    if membership.verdict is Verdict.NOT_IN_F:
        raise NotInF(level=membership.dead_level)
    return cycle_analysis(e, ds).exponent


def nonsparse_report(
    t: NaryExpansion | Fraction | int,
    ds: DigitSet,
    K: int = 10,
    cap: int = DEFAULT_CAP,
) -> MeasureReport:
    """Oracle-only report for non-sparse digit sets.

    Formula bounds are suppressed: simultaneous levels over-count.  The
    report carries the exact case tallies per level and an interval-only
    growth estimate from the deepest enumerable level.
    """
    e = as_expansion(t, ds.base)
    k_max = 0
    while ds.m ** (k_max + 1) <= cap and k_max < K:
        k_max += 1
    series = tuple(oracle_count_series(ds, e, k_max, cap))
    exp = None
    last = series[-1]
    if last.interval > 0 and k_max > 0:
        exp = GrowthExponent(ds.base, ds.m, last.interval, k_max)
    return MeasureReport(
        kind="nonsparse",
        digit_set=ds,
        translation_text=e.text(with_base=True),
        exponent=exp,
        oracle_counts=series,
        flags={"formula_suppressed": True, "horizon_limited": True},
        provenance={
            "counts": "exact level enumeration",
            "exponent": "interval-case count at the deepest level, horizon estimate",
        },
        notes=("non-sparse digit set: survivor recursion over-counts, bounds suppressed",),
    )


def measure_bounds_stream(
    stream: DigitStream,
    ds: DigitSet,
    K: int = 128,
    cap: int = DEFAULT_CAP,
) -> MeasureReport:
    """Horizon report for a digit stream; exact when the construction
    declares the fate of its liminf.

    EditedPeriodicStream instances built from closed-form rules may carry
    a declared exponent and a declared liminf ("zero"/"infinite"); the
    report then states the measure exactly, with the horizon trend as
    corroboration.  Otherwise everything is labelled horizon-limited.
    """
    if not ds.delta.sparse:
        raise NonSparse("stream reports require a sparse digit set")
    declared_exp = getattr(stream, "declared_exponent", None)
    declared_liminf = getattr(stream, "declared_liminf", None)
    est = horizon_estimates(stream, K, ds, exponent=declared_exp)
    if est.dead_level is not None:
        raise NotInF(level=est.dead_level)
    label = getattr(stream, "label", "") or "digit stream"
    if declared_liminf == "zero":
        exact = ExactLogValue.zero()
        return MeasureReport(
            kind="stream",
            digit_set=ds,
            translation_text=label,
            exponent=declared_exp,
            L=exact,
            measure_exact=exact,
            lower=exact,
            upper=exact,
            horizon=est,
            flags={"L_zero": True, "declared": True},
            provenance={"measure": "liminf constant vanishes by construction"},
        )
    if declared_liminf == "infinite":
        exact = ExactLogValue.infinite()
        return MeasureReport(
            kind="stream",
            digit_set=ds,
            translation_text=label,
            exponent=declared_exp,
            L=exact,
            measure_exact=exact,
            lower=exact,
            upper=exact,
            horizon=est,
            flags={"L_infinite": True, "declared": True},
            provenance={"measure": "liminf constant diverges by construction"},
        )
    return MeasureReport(
        kind="stream",
        digit_set=ds,
        translation_text=label,
        exponent=declared_exp,
        horizon=est,
        flags={"horizon_limited": True, "membership_unknown": True},
        provenance={"estimates": f"running minima over [{K // 2}, {K}]"},
    )


def measure_report(
    t: NaryExpansion | Fraction | int | DigitStream,
    ds: DigitSet,
    K: int = 64,
    cap: int = DEFAULT_CAP,
) -> MeasureReport:
    """Route a translation to the appropriate report.

    t = 0 -> the set itself; terminating t -> finite path; repeating t ->
    exact bounds; digit stream -> horizon report.  Non-sparse digit sets
    raise NonSparse (callers wanting the oracle report use
    `nonsparse_report`).
    """
    if not isinstance(t, (NaryExpansion, Fraction, int)):
        return measure_bounds_stream(t, ds, max(K, 16), cap)
    e = as_expansion(t, ds.base).canonical()
    if e.value == 0:
        return _self_report(ds)
    if e.is_finite:
        # the finite decomposition needs no sparseness
        return measure_bounds_finite_t(ds, e, cap)
    if not ds.delta.sparse:
        raise NonSparse("formula-mode bounds require a sparse digit set")
    return measure_bounds(e, ds, cap)


# ---------------------------------------------------------------------------
# Optimal block covers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoverBound:
    """An upper bound on H^s from one enumeration depth.

    `blocks` lists (start_offset, width_in_units): each block covers a
    consecutive run of level-k intervals by one closed interval of
    width_in_units * n**-k.  `cost` is the minimal sum of width**s.
    """

    depth: int
    exponent_text: str
    cost: mpmath.mpf
    blocks: tuple[tuple[int, int], ...]

    def cost_decimal(self, precision: int = 50) -> str:
        return mpmath.nstr(self.cost, precision)


def _exponent_numeric(s, precision: int) -> mpmath.mpf:
    if isinstance(s, GrowthExponent):
        return s.s_numeric(precision)
    if isinstance(s, Fraction):
        return mpmath.mpf(s.numerator) / s.denominator
    return mpmath.mpf(s)


def cover_upper_bound(
    ds: DigitSet,
    depth: int,
    s: GrowthExponent | Fraction | float | None = None,
    precision: int = 50,
    cap: int = DEFAULT_CAP,
) -> CoverBound:
    """Cheapest cover of level `depth` by blocks of consecutive intervals.

    Minimizes sum((block width)**s) over all partitions of the sorted
    offsets into consecutive runs, by interval dynamic programming; ties
    within the working precision go to fewer blocks.  The result upper
    bounds the covering sums at every finer scale, hence the measure.
    """
    if s is None:
        s = GrowthExponent(ds.base, ds.m, ds.m, 1)  # log_n m
    offsets = build_level(ds, depth, cap).offsets
    M = len(offsets)
    with mp.workdps(precision + 10):
        s_val = _exponent_numeric(s, precision)
        n_pow = mpmath.mpf(ds.base) ** depth
        tie_eps = mpmath.mpf(10) ** (-(precision - 5))

        # width_cost[i][j]: one block covering offsets[i..j]
        def block_cost(i: int, j: int) -> mpmath.mpf:
            width = offsets[j] + 1 - offsets[i]
            return (mpmath.mpf(width) / n_pow) ** s_val

        INF = mpmath.inf
        best: list[mpmath.mpf] = [INF] * (M + 1)
        best_blocks = [0] * (M + 1)
        cut = [-1] * (M + 1)
        best[M] = mpmath.mpf(0)
        for i in range(M - 1, -1, -1):
            for j in range(i, M):
                cand = block_cost(i, j) + best[j + 1]
                cand_blocks = 1 + best_blocks[j + 1]
                if cand < best[i] - tie_eps or (
                    cand < best[i] + tie_eps and cand_blocks < best_blocks[i]
                ):
                    best[i] = cand
                    best_blocks[i] = cand_blocks
                    cut[i] = j
        blocks: list[tuple[int, int]] = []
        i = 0
        while i < M:
            j = cut[i]
            blocks.append((offsets[i], offsets[j] + 1 - offsets[i]))
            i = j + 1
        exp_text = (
            s.s_decimal(precision) if isinstance(s, GrowthExponent) else str(s)
        )
        return CoverBound(depth, exp_text, +best[0], tuple(blocks))


# ---------------------------------------------------------------------------
# Dense approximants
# ---------------------------------------------------------------------------


@dataclass
class GreedyApproximantStream:
    """Deterministic digit stream: copied prefix, one reset digit, then the
    greedy rule  (grow with digit 0 while m**(nu - j*beta) <= y, else damp
    with the largest digit).  Extending the horizon never changes earlier
    digits, so callers can pull as far as they like.
    """

    ds: DigitSet
    target_beta: Fraction
    target_y: Fraction
    prefix: tuple[int, ...]  # digits 1..k (copied digits plus the reset digit)
    _digits: list[int] = field(default_factory=list)
    _mu: list[int] = field(default_factory=list)

    def __post_init__(self):
        self._digits = list(self.prefix)
        self._mu = [1]
        state = _I
        for h in self._digits:
            f = _survivor_factor(state, h, self.ds)
            state = _sigma_step(state, h, self.ds)
            self._mu.append(self._mu[-1] * f)
        self._state = state

    @property
    def base(self) -> int:
        return self.ds.base

    def _exceeds_target(self, j: int) -> bool:
        """m**(nu(j) - j*beta) > y, exactly."""
        a, b = self.target_beta.numerator, self.target_beta.denominator
        lhs = Fraction(self._mu[j] ** b)
        rhs = self.target_y**b * Fraction(self.ds.m) ** (j * a)
        return lhs > rhs

    def digit_at(self, k: int) -> int:
        while len(self._digits) < k:
            j = len(self._digits)
            h = self.ds.digits[-1] if self._exceeds_target(j) else 0
            f = _survivor_factor(self._state, h, self.ds)
            self._state = _sigma_step(self._state, h, self.ds)
            self._digits.append(h)
            self._mu.append(self._mu[-1] * f)
        return self._digits[k - 1]

    def mu_at(self, k: int) -> int:
        self.digit_at(max(k, 1))
        return self._mu[k]


@dataclass(frozen=True)
class DenseApproximant:
    """A greedy approximant x to t with its exact certificates.

    distance_bound is an exact rational with |x - t| <= distance_bound < eps.
    The provable envelope of X_j = m**(nu - j*beta) is
    [y*m**-beta, y*m**(1-beta)]: one growth step from below the threshold
    cannot overshoot the top, one damping step from above cannot undershoot
    the bottom, so once X enters the band it never leaves.  band_entry is
    the first index inside the band (None if the horizon ends first, e.g.
    for extreme y, in which case the report is horizon-limited).  The
    windowed liminf estimate is additionally tested against the target
    band [y*m**-beta, y].
    """

    stream: GreedyApproximantStream
    prefix: tuple[int, ...]
    copied: int
    reset_digit: int
    distance_bound: Fraction
    eps: Fraction
    band_entry: int | None
    band_ok: bool | None
    liminf_estimate_at: int
    liminf_in_target_band: bool | None
    horizon: int
    states_all_pm1: bool
    horizon_limited: bool


def dense_approximant(
    ds: DigitSet,
    t: NaryExpansion | Fraction | int,
    beta: Fraction,
    y: Fraction,
    epsilon: Fraction,
    K: int = 200,
) -> DenseApproximant:
    """Construct x within epsilon of t whose measure lands near y.

    Copies digits of t while n**-(k-1) >= epsilon, resets the automaton to
    the interval state (digit 0, or n - d_m out of the potential state),
    then follows the greedy rule to the horizon.  All certificates are
    exact rational comparisons.
    """
    if not ds.delta.sparse:
        raise NonSparse("greedy construction requires a sparse digit set")
    beta, y, epsilon = Fraction(beta), Fraction(y), Fraction(epsilon)
    if not 0 < beta < 1:
        raise BadBand(f"target exponent {beta} outside (0, 1)")
    if y <= 0:
        raise BadBand("target constant must be positive")
    if epsilon <= 0:
        raise ValidationError("epsilon must be positive")
    e = as_expansion(t, ds.base)

    k = 1
    while Fraction(1, ds.base ** (k - 1)) >= epsilon:
        k += 1
    copied = k - 1
    trace = sigma_sequence(e, copied, ds)
    if not trace.alive:
        raise NotInF(level=trace.first_dead_level())
    state = trace.states[-1]
    reset = 0 if state is _I else ds.base - ds.digits[-1]
    prefix = trace.digits + (reset,)

    if K < k + 8:
        raise ValidationError(f"horizon {K} too short for a copy length of {copied}")
    stream = GreedyApproximantStream(ds, beta, y, prefix)
    stream.digit_at(K)

    m = ds.m
    a, b = beta.numerator, beta.denominator
    yb = y**b

    def in_envelope(j: int) -> bool:
        # y*m**-beta <= X_j <= y*m**(1-beta), cross-powered by b
        lhs = Fraction(stream.mu_at(j) ** b)
        return (
            lhs * Fraction(m) ** a >= yb * Fraction(m) ** (j * a)
            and lhs <= yb * Fraction(m) ** (j * a + b - a)
        )

    band_entry = None
    band_ok: bool | None = None
    for j in range(k, K + 1):
        if band_entry is None:
            if in_envelope(j):
                band_entry = j
                band_ok = True
        elif not in_envelope(j):
            band_ok = False

    window = range(max(k, K // 2), K + 1)
    best = min(window)
    for j in window:
        if (
            stream.mu_at(j) ** b * Fraction(m) ** (best * a)
            < stream.mu_at(best) ** b * Fraction(m) ** (j * a)
        ):
            best = j
    in_band = None
    if band_entry is not None and best >= band_entry:
        lhs = Fraction(stream.mu_at(best) ** b)
        in_band = (
            lhs * Fraction(m) ** a >= yb * Fraction(m) ** (best * a)
            and lhs <= yb * Fraction(m) ** (best * a)
        )

    dist = Fraction(1, ds.base**copied)
    states_ok = all(s in (_I, _P) for s in sigma_sequence(stream, K, ds).states)
    return DenseApproximant(
        stream=stream,
        prefix=prefix,
        copied=copied,
        reset_digit=reset,
        distance_bound=dist,
        eps=epsilon,
        band_entry=band_entry,
        band_ok=band_ok,
        liminf_estimate_at=best,
        liminf_in_target_band=in_band,
        horizon=K,
        states_all_pm1=states_ok,
        horizon_limited=band_entry is None,
    )
