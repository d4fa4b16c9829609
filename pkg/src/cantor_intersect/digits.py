"""Digit sets, difference sets, and eventually periodic base-n expansions.

A deleted-digits Cantor set is determined by a base n >= 3 and a strictly
increasing digit list D = {0 = d_1 < ... < d_m} with 2 <= m < n: it is the
set of points in [0, 1] whose base-n expansion uses only digits from D.
The difference set Delta = D - D controls everything downstream: which
digits of a translation keep the level-k intersection alive, and the
uniform / regular / sparse trichotomy:

  uniform:  consecutive digit gaps are constant and >= 2
  regular:  D is contained in some uniform digit set, i.e. gcd of the
            nonzero digits is >= 2
  sparse:   distinct elements of Delta are at distance >= 2

uniform => regular => sparse, and none of the arrows reverse.

Translations t in [0, 1] are held exactly: as Fractions and as canonical
eventually periodic base-n digit streams (preperiod + repeating period).
Canonical form is what base-n long division produces; the one value with
no terminating twin inside the "0.xxx" grammar is 1 itself, kept as the
pure repeating digit n-1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd

from .errors import (
    BaseTooSmall,
    DigitOutOfRange,
    DuplicateDigit,
    FirstDigitNonzero,
    NotFinite,
    OutOfRange,
    TooFewDigits,
    TooManyDigits,
    ValidationError,
    ZeroHasNoTwin,
)

Rational = Fraction


@dataclass(frozen=True)
class DeltaSet:
    """The difference set D - D with its gap-structure classification.

    `values` is sorted and symmetric about 0 (it always contains 0).  The
    four membership views consumed by the transition function are exposed
    as frozensets.
    """

    base: int
    values: tuple[int, ...]
    uniform: bool
    regular: bool
    sparse: bool

    @cached_property
    def members(self) -> frozenset[int]:
        """Delta."""
        return frozenset(self.values)

    @cached_property
    def members_minus_one(self) -> frozenset[int]:
        """Delta - 1."""
        return frozenset(v - 1 for v in self.values)

    @cached_property
    def reflected(self) -> frozenset[int]:
        """n - Delta."""
        return frozenset(self.base - v for v in self.values)

    @cached_property
    def reflected_minus_one(self) -> frozenset[int]:
        """n - Delta - 1."""
        return frozenset(self.base - v - 1 for v in self.values)


@dataclass(frozen=True)
class DigitSet:
    """Base n plus the strictly increasing digit tuple defining the set."""

    base: int
    digits: tuple[int, ...]

    def __post_init__(self):
        n = self.base
        d = self.digits
        if n < 3:
            raise BaseTooSmall(f"base must be >= 3, got {n}")
        if len(d) < 2:
            raise TooFewDigits("at least two digits are required")
        if len(d) >= n:
            raise TooManyDigits(f"{len(d)} digits do not fit a base-{n} deletion")
        for x in d:
            if not 0 <= x <= n - 1:
                raise DigitOutOfRange(f"digit {x} outside [0, {n - 1}]")
        for a, b in zip(d, d[1:]):
            if a == b:
                raise DuplicateDigit(f"digit {a} repeated")
            if a > b:
                raise ValidationError("digits must be sorted increasingly")
        if d[0] != 0:
            raise FirstDigitNonzero("smallest digit must be 0")

    @property
    def m(self) -> int:
        return len(self.digits)

    @cached_property
    def digit_members(self) -> frozenset[int]:
        return frozenset(self.digits)

    @cached_property
    def delta(self) -> DeltaSet:
        return classify(self)

    def __str__(self) -> str:
        return f"C_{{{self.base},{{{','.join(map(str, self.digits))}}}}}"


def make_digit_set(n: int, digits: list[int] | tuple[int, ...]) -> DigitSet:
    """Validate and build a DigitSet; digits may arrive unsorted."""
    if not digits:
        raise TooFewDigits("empty digit list")
    return DigitSet(n, tuple(sorted(digits)))


def classify(ds: DigitSet) -> DeltaSet:
    """Compute Delta = D - D and the uniform/regular/sparse flags."""
    d = ds.digits
    values = tuple(sorted({a - b for a in d for b in d}))
    gaps = [b - a for a, b in zip(d, d[1:])]
    uniform = all(g == gaps[0] for g in gaps) and gaps[0] >= 2
    # D sits inside a uniform digit set with gap g iff g >= 2 divides every
    # digit; d_m <= n-1 already holds, so only divisibility matters.
    g = 0
    for x in d:
        g = gcd(g, x)
    regular = g >= 2
    sparse = all(b - a >= 2 for a, b in zip(values, values[1:]))
    return DeltaSet(ds.base, values, uniform, regular, sparse)


# ---------------------------------------------------------------------------
# Eventually periodic expansions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NaryExpansion:
    """Exact base-n digit stream 0.t_1 t_2 ... with eventual period.

    `period == ()` encodes a terminating expansion; digits past the end
    read as 0.  Instances produced by `expansion_from_rational` (or by
    `.canonical()`) are canonical: minimal period, minimal preperiod, and
    never the pure repeating digit n-1 -- except for the value 1, which has
    no terminating form and is kept as 0.(n-1).  Non-canonical instances
    exist on purpose: `alternate_representation` returns the repeating
    twin of a terminating expansion, which downstream membership tests
    need verbatim.
    """

    base: int
    preperiod: tuple[int, ...] = ()
    period: tuple[int, ...] = ()

    def __post_init__(self):
        if self.base < 2:
            raise BaseTooSmall(f"expansion base must be >= 2, got {self.base}")
        for x in self.preperiod + self.period:
            if not 0 <= x <= self.base - 1:
                raise DigitOutOfRange(f"digit {x} outside [0, {self.base - 1}]")

    # -- structure ----------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return not self.period

    @property
    def finite_length(self) -> int:
        """Number of places of a terminating expansion (trailing zeros kept)."""
        if not self.is_finite:
            raise NotFinite("expansion has a repeating part")
        return len(self.preperiod)

    @cached_property
    def value(self) -> Fraction:
        return rational_from_expansion(self)

    @property
    def is_canonical(self) -> bool:
        return self == expansion_from_rational(self.value, self.base)

    def canonical(self) -> "NaryExpansion":
        return expansion_from_rational(self.value, self.base)

    # -- digit access ---------------------------------------------------------

    def digit_at(self, k: int) -> int:
        """t_k for k >= 1; 0 beyond a terminating expansion."""
        if k < 1:
            raise ValidationError(f"digit positions start at 1, got {k}")
        if k <= len(self.preperiod):
            return self.preperiod[k - 1]
        if self.period:
            return self.period[(k - len(self.preperiod) - 1) % len(self.period)]
        return 0

    def truncate(self, k: int) -> Fraction:
        """The rational 0.t_1...t_k (first k places, exactly)."""
        if k < 0:
            raise ValidationError("truncation depth must be >= 0")
        return Fraction(self.shift_numerator(k), self.base**k)

    def shift_numerator(self, k: int) -> int:
        """Integer h with truncate(k) == h / base**k."""
        h = 0
        for j in range(1, k + 1):
            h = h * self.base + self.digit_at(j)
        return h

    def text(self, with_base: bool = False) -> str:
        return format_expansion(self, with_base=with_base)

    def __str__(self) -> str:
        return self.text(with_base=True)


def rational_from_expansion(e: NaryExpansion) -> Fraction:
    """Sum the digit series exactly: geometric tail for the period."""
    n = e.base
    pre_len = len(e.preperiod)
    pre_num = 0
    for d in e.preperiod:
        pre_num = pre_num * n + d
    val = Fraction(pre_num, n**pre_len)
    if e.period:
        per_num = 0
        for d in e.period:
            per_num = per_num * n + d
        val += Fraction(per_num, (n ** len(e.period) - 1) * n**pre_len)
    return val


def expansion_from_rational(t: Fraction | int, n: int) -> NaryExpansion:
    """Canonical expansion of t in [0, 1] by long division.

    Remainders repeat exactly when the digits do, so the first repeated
    remainder marks the minimal preperiod/period split.  t = 1 is the
    documented exception: it has no terminating 0.xxx form and comes back
    as the pure period (n-1).
    """
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise OutOfRange(f"translation {t} outside [0, 1]")
    if t == 1:
        return NaryExpansion(n, (), (n - 1,))
    p, q = t.numerator, t.denominator
    digits: list[int] = []
    seen: dict[int, int] = {p: 0}
    r = p
    while True:
        r *= n
        digits.append(r // q)
        r %= q
        if r == 0:
            return NaryExpansion(n, tuple(digits), ())
        if r in seen:
            cut = seen[r]
            return NaryExpansion(n, tuple(digits[:cut]), tuple(digits[cut:]))
        seen[r] = len(digits)


def truncate(e: NaryExpansion, k: int) -> Fraction:
    return e.truncate(k)


def digit_at(e: NaryExpansion, k: int) -> int:
    return e.digit_at(k)


def alternate_representation(e: NaryExpansion) -> NaryExpansion:
    """The repeating twin of a nonzero terminating expansion.

    Decrement the last nonzero digit and append the period (n-1); the value
    is unchanged.  The result is deliberately non-canonical.
    """
    if not e.is_finite:
        raise NotFinite("only terminating expansions have a repeating twin")
    digits = list(e.preperiod)
    while digits and digits[-1] == 0:
        digits.pop()
    if not digits:
        raise ZeroHasNoTwin("0 has a unique expansion")
    digits[-1] -= 1
    return NaryExpansion(e.base, tuple(digits), (e.base - 1,))


# ---------------------------------------------------------------------------
# Text syntax
# ---------------------------------------------------------------------------
#
#   expansion := "0" | "1" | "0." body [ "(" body ")" ] [ "@" base ]
#   body      := digit-run            (base <= 10, one character per digit)
#              | "[" d { "," d } "]"  (any base)
#   rational  := int "/" int
#
# The "@base" suffix is emitted in serialized output and checked against the
# expected base when parsing.

_EXPANSION_RE = re.compile(
    r"^0\.(?P<pre>[0-9]*|\[[0-9,\s]*\])"
    r"(?:\((?P<per>[0-9]+|\[[0-9,\s]*\])\))?"
    r"(?:@(?P<base>\d+))?$"
)


def _parse_body(body: str, n: int) -> tuple[int, ...]:
    if body == "":
        return ()
    if body.startswith("["):
        inner = body[1:-1].strip()
        if not inner:
            return ()
        return tuple(int(tok) for tok in inner.split(","))
    if n > 10:
        raise ValidationError(
            f"digit runs are ambiguous for base {n} > 10; use [d,d,...] lists"
        )
    return tuple(int(c) for c in body)


def _format_body(digits: tuple[int, ...], n: int) -> str:
    if n <= 10:
        return "".join(str(d) for d in digits)
    return "[" + ",".join(str(d) for d in digits) + "]"


def format_expansion(e: NaryExpansion, with_base: bool = False) -> str:
    s = "0." + _format_body(e.preperiod, e.base)
    if e.period:
        s += "(" + _format_body(e.period, e.base) + ")"
    if with_base:
        s += f"@{e.base}"
    return s


def parse_expansion(text: str, n: int) -> NaryExpansion:
    m = _EXPANSION_RE.match(text.strip())
    if not m:
        raise ValidationError(f"cannot parse expansion {text!r}")
    if m.group("base") is not None and int(m.group("base")) != n:
        raise ValidationError(
            f"expansion declares base {m.group('base')} but base {n} expected"
        )
    pre = _parse_body(m.group("pre"), n)
    per = _parse_body(m.group("per"), n) if m.group("per") is not None else ()
    return NaryExpansion(n, pre, per)


def parse_translation(text: str, n: int) -> Fraction | NaryExpansion:
    """CLI/JSON translation grammar: "p/q", an integer, or an expansion."""
    text = text.strip()
    if text.startswith("0.") :
        return parse_expansion(text, n)
    if "/" in text:
        num, _, den = text.partition("/")
        try:
            t = Fraction(int(num), int(den))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"cannot parse rational {text!r}") from exc
    else:
        try:
            t = Fraction(int(text))
        except ValueError as exc:
            raise ValidationError(f"cannot parse translation {text!r}") from exc
    if not 0 <= t <= 1:
        raise OutOfRange(f"translation {t} outside [0, 1]")
    return t


def as_expansion(t: Fraction | int | NaryExpansion, n: int) -> NaryExpansion:
    """Normalize a translation to its canonical expansion in base n."""
    if isinstance(t, NaryExpansion):
        if t.base != n:
            raise ValidationError(f"expansion base {t.base} does not match n={n}")
        return t
    return expansion_from_rational(Fraction(t), n)
