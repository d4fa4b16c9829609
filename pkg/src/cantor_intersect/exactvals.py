"""Exact symbolic values of the form  a * b**s,  s = log_n(P) / p.

Every quantity the measure bounds produce lives in this one family:

  liminf constant        L        = mu(k*) * (n**-k*)**s
  refined upper bound    L~term   = mu(k)  * (component length)**s
  lower-bound factor     m**-beta = (1/n)**s
  rational bounds        q        = q * 1**s

with a, b positive rationals and one shared exponent s per report.
Ordering is decided exactly wherever the data allows it:

  * equal bases, or equal coefficients, or factors on the same side of 1:
    plain rational comparison;
  * base ratio a rational power of n (the whole L family has b = n**-k):
    reduces to an integer power comparison against P;
  * rational s (P a rational power of n): direct rational-root comparison;

and only genuinely transcendental gaps fall through to certified interval
arithmetic at escalating precision.  No bare floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mp
from sympy import factorint

from .errors import ComparisonUndecided, ValidationError

_INTERVAL_PREC_LADDER = (64, 128, 256, 512, 1024, 2048, 4096, 8192)


@dataclass(frozen=True)
class GrowthExponent:
    """The pair (P, p) defining beta = log_m(P)/p and s = log_n(P)/p.

    P is the product of survivor factors over one automaton cycle of
    length p; beta is the normalized growth rate of the survivor count
    and s = beta*log_n(m) the dimension exponent.
    """

    n: int
    m: int
    P: int
    p: int

    def __post_init__(self):
        if self.P < 0 or self.p <= 0:
            raise ValidationError("cycle product must be >= 0 and length > 0")

    def same_exponent(self, other: "GrowthExponent") -> bool:
        return self.n == other.n and self.P**other.p == other.P**self.p

    def beta_fraction(self) -> Fraction | None:
        """beta as an exact rational when P is an integer power of m."""
        e = _integer_log(self.P, self.m)
        return None if e is None else Fraction(e, self.p)

    def s_fraction(self) -> Fraction | None:
        """s as an exact rational when P is an integer power of n."""
        e = _integer_log(self.P, self.n)
        return None if e is None else Fraction(e, self.p)

    def beta_numeric(self, precision: int = 50) -> mpmath.mpf:
        with mp.workdps(precision + 10):
            return +(mpmath.log(self.P) / (self.p * mpmath.log(self.m)))

    def s_numeric(self, precision: int = 50) -> mpmath.mpf:
        with mp.workdps(precision + 10):
            return +(mpmath.log(self.P) / (self.p * mpmath.log(self.n)))

    def beta_decimal(self, precision: int = 50) -> str:
        return mpmath.nstr(self.beta_numeric(precision), precision)

    def s_decimal(self, precision: int = 50) -> str:
        return mpmath.nstr(self.s_numeric(precision), precision)


def _integer_log(value: int, base: int) -> int | None:
    """e with base**e == value, or None."""
    if value < 1:
        return None
    e = 0
    v = 1
    while v < value:
        v *= base
        e += 1
    return e if v == value else None


@lru_cache(maxsize=4096)
def _prime_exponents(v: int) -> dict[int, int]:
    return dict(factorint(v))


def rational_power_of(w: Fraction, b: int) -> Fraction | None:
    """Exponent u with w == b**u (u rational), or None.

    Decided by prime factorization: the exponent vectors must be parallel.
    """
    if w <= 0 or b < 2:
        return None
    if w == 1:
        return Fraction(0)
    vec: dict[int, int] = dict(_prime_exponents(w.numerator))
    for q, e in _prime_exponents(w.denominator).items():
        vec[q] = vec.get(q, 0) - e
    bvec = _prime_exponents(b)
    if set(vec) != set(bvec):
        return None
    ratios = {Fraction(vec[q], bvec[q]) for q in vec}
    return ratios.pop() if len(ratios) == 1 else None


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class ExactLogValue:
    """A positive real  coeff * base**s,  plus zero/infinity flags.

    `exponent is None` (or P == 1, i.e. s == 0) makes the value the plain
    rational `coeff`.
    """

    coeff: Fraction
    base: Fraction = Fraction(1)
    exponent: GrowthExponent | None = None
    is_zero: bool = False
    is_infinite: bool = False

    def __post_init__(self):
        if not (self.is_zero or self.is_infinite):
            if self.coeff <= 0 or self.base <= 0:
                raise ValidationError("value must be positive (or flagged 0/inf)")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls) -> "ExactLogValue":
        return cls(Fraction(0), Fraction(1), None, is_zero=True)

    @classmethod
    def infinite(cls) -> "ExactLogValue":
        return cls(Fraction(1), Fraction(1), None, is_infinite=True)

    @classmethod
    def from_rational(cls, q: Fraction | int) -> "ExactLogValue":
        q = Fraction(q)
        if q == 0:
            return cls.zero()
        return cls(q)

    # -- algebra (closed under rational scaling of either slot) ---------------

    def scaled(self, c: Fraction | int) -> "ExactLogValue":
        if self.is_zero or self.is_infinite:
            return self
        return ExactLogValue(self.coeff * Fraction(c), self.base, self.exponent)

    def base_scaled(self, b: Fraction | int) -> "ExactLogValue":
        """Multiply the value by b**s."""
        if self.is_zero or self.is_infinite:
            return self
        return ExactLogValue(self.coeff, self.base * Fraction(b), self.exponent)

    # -- views ----------------------------------------------------------------

    def _effective_rational(self) -> Fraction | None:
        """The value as a Fraction when s plays no role."""
        if self.exponent is None or self.exponent.P == 1 or self.base == 1:
            return self.coeff
        u = rational_power_of(self.base, self.exponent.n)
        if u is not None:
            s_frac = self.exponent.s_fraction()
            if s_frac is not None:
                t = u * s_frac
                if t.denominator == 1:
                    return self.coeff * Fraction(self.exponent.n) ** t.numerator
            # base = n**u and base**s = P**(u/p): rational iff p | u*num
            t = u * Fraction(1, self.exponent.p)
            if t.denominator == 1:
                return self.coeff * Fraction(self.exponent.P) ** t.numerator
        return None

    def radical(self) -> tuple[Fraction, int] | None:
        """(Q, p) with value == Q**(1/p), available when base is a power of n.

        For the liminf family this is (mu(k*)**p / P**k*, p).
        """
        if self.is_zero or self.is_infinite or self.exponent is None:
            return None
        u = rational_power_of(self.base, self.exponent.n)
        if u is None:
            return None
        e = self.exponent
        # value**(p*u_den) = coeff**(p*u_den) * P**u_num
        degree = e.p * u.denominator
        return (self.coeff**degree * Fraction(e.P) ** u.numerator, degree)

    def numeric(self, precision: int = 50) -> mpmath.mpf:
        with mp.workdps(precision + 10):
            if self.is_zero:
                return mpmath.mpf(0)
            if self.is_infinite:
                return mpmath.inf
            out = mpmath.mpf(self.coeff.numerator) / self.coeff.denominator
            if self.exponent is not None and self.base != 1 and self.exponent.P != 1:
                e = self.exponent
                s = mpmath.log(e.P) / (e.p * mpmath.log(e.n))
                b = mpmath.mpf(self.base.numerator) / self.base.denominator
                out *= mpmath.exp(s * mpmath.log(b))
            return +out

    def decimal(self, precision: int = 50) -> str:
        if self.is_zero:
            return "0"
        if self.is_infinite:
            return "inf"
        return mpmath.nstr(self.numeric(precision), precision)

    # -- exact ordering ---------------------------------------------------------

    def compare(self, other: "ExactLogValue") -> int:
        """-1 / 0 / +1, decided exactly or by certified intervals."""
        if self.is_zero:
            return 0 if other.is_zero else -1
        if other.is_zero:
            return 1
        if self.is_infinite:
            return 0 if other.is_infinite else 1
        if other.is_infinite:
            return -1

        r1 = self._effective_rational()
        r2 = other._effective_rational()
        if r1 is not None and r2 is not None:
            return _sign(r1 - r2)

        exp = self.exponent if r1 is None else other.exponent
        if (
            r1 is None
            and r2 is None
            and self.exponent is not None
            and other.exponent is not None
            and not self.exponent.same_exponent(other.exponent)
        ):
            return self._interval_compare(other)

        assert exp is not None
        if r1 is not None:
            r = r1 / other.coeff
            w = Fraction(1) / other.base
        elif r2 is not None:
            r = self.coeff / r2
            w = self.base
        else:
            r = self.coeff / other.coeff
            w = self.base / other.base

        # sign of log(r) + s*log(w), s > 0
        if w == 1:
            return _sign(r - 1)
        if r == 1:
            return _sign(w - 1)
        if (r > 1) == (w > 1):
            return 1 if r > 1 else -1

        sign = 1
        if r < 1:
            r, w = 1 / r, 1 / w
            sign = -1
        W = 1 / w  # r > 1, W > 1: sign of  log r - s*log W

        u = rational_power_of(W, exp.n)
        if u is not None:
            # W**s = P**(u/p): compare r**(p*u_den) with P**u_num
            lhs = r ** (exp.p * u.denominator)
            rhs = Fraction(exp.P) ** u.numerator
            return sign * _sign(lhs - rhs)
        sf = exp.s_fraction()
        if sf is not None:
            lhs = r**sf.denominator
            rhs = W**sf.numerator
            return sign * _sign(lhs - rhs)
        g = rational_power_of(r, exp.P)
        if g is not None:
            # r = P**g = n**(g*p*s): compare n**(g*p) with W
            lhs = Fraction(exp.n) ** (g.numerator * exp.p)
            rhs = W**g.denominator
            return sign * _sign(lhs - rhs)
        return sign * _interval_sign_log_ratio(r, W, exp)

    def _interval_compare(self, other: "ExactLogValue") -> int:
        iv = mpmath.iv
        for prec in _INTERVAL_PREC_LADDER:
            iv.prec = prec
            diff = _iv_log_value(self, iv) - _iv_log_value(other, iv)
            if diff > 0:
                return 1
            if diff < 0:
                return -1
        raise ComparisonUndecided("values coincide past the precision ladder")

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def eq_value(self, other: "ExactLogValue") -> bool:
        return self.compare(other) == 0


def _iv_frac(q: Fraction, iv) -> "mpmath.iv.mpf":
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


def _iv_log_value(v: ExactLogValue, iv) -> "mpmath.iv.mpf":
    out = iv.log(_iv_frac(v.coeff, iv))
    if v.exponent is not None and v.base != 1 and v.exponent.P != 1:
        e = v.exponent
        s = iv.log(iv.mpf(e.P)) / (iv.mpf(e.p) * iv.log(iv.mpf(e.n)))
        out += s * iv.log(_iv_frac(v.base, iv))
    return out


def _interval_sign_log_ratio(r: Fraction, W: Fraction, exp: GrowthExponent) -> int:
    """Certified sign of log(r) - s*log(W) with r, W > 1."""
    iv = mpmath.iv
    for prec in _INTERVAL_PREC_LADDER:
        iv.prec = prec
        s = iv.log(iv.mpf(exp.P)) / (iv.mpf(exp.p) * iv.log(iv.mpf(exp.n)))
        diff = iv.log(_iv_frac(r, iv)) - s * iv.log(_iv_frac(W, iv))
        if diff > 0:
            return 1
        if diff < 0:
            return -1
    raise ComparisonUndecided(
        f"cannot separate {r} from {W}**s past the precision ladder"
    )


def exact_min(values: list[ExactLogValue]) -> ExactLogValue:
    best = values[0]
    for v in values[1:]:
        if v.compare(best) < 0:
            best = v
    return best
