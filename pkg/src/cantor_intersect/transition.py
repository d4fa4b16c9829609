"""The level-case automaton driven by the digits of the translation.

At refinement depth k the intersection C_k with its shifted copy is in
exactly one of four cases, encoded as a state:

  INTERVAL       some n-ary interval of C_k coincides with a shifted one,
                 and none merely abuts one on the left   (value  1)
  POTENTIAL      some interval abuts a shifted one on the left, none
                 coincides                               (value -1)
  SIMULTANEOUS   both kinds occur at once                (value  i)
  IRRECOVERABLE  neither occurs; the intersection can never recover
                 once the translation has nonzero tail   (value  0)

Consuming digit h updates the state by multiplying with xi(state, h),
a five-valued function of the difference-set memberships of h.  The
product stays inside {1, -1, i, 0}; the multiplication is precomputed
as a lookup table from the complex arithmetic.

Per-step child counts: an INTERVAL-case interval refines into
#D∩(D+h) interval-case children and #D∩(D+h+1) potential-case children;
a POTENTIAL-case interval into #D∩(D+n-h) and #D∩(D+n-h-1).  These feed
the survivor recursion in `counting`.  No single count exists for
SIMULTANEOUS levels: the two populations refine differently, which is
exactly why naive counting over-counts there.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Protocol, runtime_checkable

from .digits import DigitSet, NaryExpansion
from .errors import DigitOutOfRange, StateNotCounted


class CaseState(Enum):
    INTERVAL = 1 + 0j
    POTENTIAL = -1 + 0j
    SIMULTANEOUS = 1j
    IRRECOVERABLE = 0j

    @property
    def symbol(self) -> str:
        return {_I: "1", _P: "-1", _S: "i", _D: "0"}[self]


class XiValue(Enum):
    ZERO = 0j
    PLUS_ONE = 1 + 0j
    MINUS_ONE = -1 + 0j
    PLUS_I = 1j
    MINUS_I = -1j


_I = CaseState.INTERVAL
_P = CaseState.POTENTIAL
_S = CaseState.SIMULTANEOUS
_D = CaseState.IRRECOVERABLE

# Product table sigma_{k+1} = xi * sigma_k from complex multiplication.
# xi's image depends on the state argument, so only the reachable pairs
# land back in {1, -1, i, 0}; those are exactly the ones tabulated, and
# the reachable images per state are asserted below.
_PRODUCT: dict[tuple[XiValue, CaseState], CaseState] = {}
_BY_VALUE = {s.value: s for s in CaseState}
for _xi in XiValue:
    for _st in CaseState:
        _prod = _xi.value * _st.value
        if _prod in _BY_VALUE:
            _PRODUCT[(_xi, _st)] = _BY_VALUE[_prod]

_REACHABLE_XI = {
    _I: {XiValue.ZERO, XiValue.PLUS_ONE, XiValue.MINUS_ONE, XiValue.PLUS_I},
    _P: {XiValue.ZERO, XiValue.PLUS_ONE, XiValue.MINUS_ONE, XiValue.MINUS_I},
    _S: {XiValue.ZERO, XiValue.PLUS_ONE, XiValue.PLUS_I, XiValue.MINUS_I},
    _D: {XiValue.ZERO},
}
for _st, _xis in _REACHABLE_XI.items():
    for _xi in _xis:
        if (_xi, _st) not in _PRODUCT:
            raise AssertionError(f"reachable product {_xi} * {_st} escapes the states")
del _xi, _st, _prod, _xis


def _check_digit(digit: int, ds: DigitSet) -> None:
    if not 0 <= digit <= ds.base - 1:
        raise DigitOutOfRange(f"digit {digit} outside [0, {ds.base - 1}]")


def xi(state: CaseState, digit: int, ds: DigitSet) -> XiValue:
    """The transition multiplier xi(state, digit), determined by D and n."""
    _check_digit(digit, ds)
    d = ds.delta
    if state is _D:
        return XiValue.ZERO
    if state is _I:
        in_a = digit in d.members
        in_b = digit in d.members_minus_one
        if in_a and not in_b:
            return XiValue.PLUS_ONE
        if in_b and not in_a:
            return XiValue.MINUS_ONE
        if in_a and in_b:
            return XiValue.PLUS_I
        return XiValue.ZERO
    if state is _P:
        in_a = digit in d.reflected
        in_b = digit in d.reflected_minus_one
        if in_a and not in_b:
            return XiValue.MINUS_ONE
        if in_b and not in_a:
            return XiValue.PLUS_ONE
        if in_a and in_b:
            return XiValue.MINUS_I
        return XiValue.ZERO
    # SIMULTANEOUS: both populations are present, so both membership
    # families are in play at once.
    in_a = digit in d.members or digit in d.reflected
    in_b = digit in d.members_minus_one or digit in d.reflected_minus_one
    if in_a and not in_b:
        return XiValue.MINUS_I
    if in_b and not in_a:
        return XiValue.PLUS_I
    if in_a and in_b:
        return XiValue.PLUS_ONE
    return XiValue.ZERO


def sigma_step(state: CaseState, digit: int, ds: DigitSet) -> CaseState:
    return _PRODUCT[(xi(state, digit, ds), state)]


def branch_counts(state: CaseState, digit: int, ds: DigitSet) -> tuple[int, int]:
    """(interval_children, potential_children) of one classified interval."""
    _check_digit(digit, ds)
    if state not in (_I, _P):
        raise StateNotCounted(f"no per-interval branch count for state {state.name}")
    D = ds.digit_members
    if state is _I:
        a, b = digit, digit + 1
    else:
        a, b = ds.base - digit, ds.base - digit - 1
    return (
        sum(1 for x in D if x - a in D),
        sum(1 for x in D if x - b in D),
    )


def survivor_factor(state: CaseState, digit: int, ds: DigitSet) -> int:
    """Multiplier of the survivor recursion for a step out of `state`.

    INTERVAL level:   #(D - h) ∩ (D ∪ (D+1))
    POTENTIAL level:  #(D - n + h) ∩ (D ∪ (D-1))

    Evaluated literally as set arithmetic: for sparse digit sets the two
    unions are disjoint and the factor equals the sum of branch_counts.
    """
    _check_digit(digit, ds)
    if state is _D:
        return 0
    if state is _S:
        raise StateNotCounted("survivor recursion undefined at a simultaneous level")
    D = ds.digit_members
    if state is _I:
        shifted = {x - digit for x in D}
        targets = D | {x + 1 for x in D}
    else:
        shifted = {x - ds.base + digit for x in D}
        targets = D | {x - 1 for x in D}
    return len(shifted & targets)


@runtime_checkable
class DigitStream(Protocol):
    """Pull-based digit source: anything exposing base and digit_at(k)."""

    base: int

    def digit_at(self, k: int) -> int: ...


@dataclass(frozen=True)
class FunctionStream:
    """Wrap a plain function k -> digit as a DigitStream."""

    base: int
    fn: "callable"

    def digit_at(self, k: int) -> int:
        return self.fn(k)


@dataclass(frozen=True)
class SigmaTrace:
    """States sigma(0..K) with consumed digits and per-step child counts.

    factors[0] is the seed 1; factors[k] is the survivor multiplier applied
    between levels k-1 and k, None where the parent level was SIMULTANEOUS
    (the recursion is undefined there), and 0 once the trace is dead.
    """

    digit_set: DigitSet
    digits: tuple[int, ...]
    states: tuple[CaseState, ...]
    factors: tuple[int | None, ...]

    @property
    def horizon(self) -> int:
        return len(self.states) - 1

    def first_dead_level(self) -> int | None:
        for k, s in enumerate(self.states):
            if s is _D:
                return k
        return None

    def first_simultaneous_level(self) -> int | None:
        for k, s in enumerate(self.states):
            if s is _S:
                return k
        return None

    @property
    def alive(self) -> bool:
        return self.states[-1] is not _D


def sigma_sequence(
    t: NaryExpansion | DigitStream, K: int, ds: DigitSet
) -> SigmaTrace:
    """Run the automaton through the first K digits of t."""
    if K < 0:
        raise DigitOutOfRange("horizon must be >= 0")
    states = [_I]
    digits: list[int] = []
    factors: list[int | None] = [1]
    for k in range(1, K + 1):
        h = t.digit_at(k)
        prev = states[-1]
        if prev is _S:
            factors.append(None)
        else:
            factors.append(survivor_factor(prev, h, ds))
        states.append(sigma_step(prev, h, ds))
        digits.append(h)
    return SigmaTrace(ds, tuple(digits), tuple(states), tuple(factors))


def states_of(trace: SigmaTrace) -> Iterable[str]:
    return (s.symbol for s in trace.states)
