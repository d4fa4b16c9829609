"""Exception hierarchy for the engine.

Every contract violation raises a named subclass so callers (and the CLI)
can map failures to stable exit codes: validation errors, formula-mode
refusals, capacity limits, and undecidable-at-horizon results.
"""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all engine errors."""


class ValidationError(EngineError, ValueError):
    """Bad input: rejected before any computation starts."""


# -- digit set construction ---------------------------------------------------

class BaseTooSmall(ValidationError):
    pass


class DigitOutOfRange(ValidationError):
    pass


class DuplicateDigit(ValidationError):
    pass


class FirstDigitNonzero(ValidationError):
    pass


class TooManyDigits(ValidationError):
    pass


class TooFewDigits(ValidationError):
    pass


# -- expansions ---------------------------------------------------------------

class OutOfRange(ValidationError):
    """Translation value outside [0, 1]."""


class NotFinite(ValidationError):
    """Operation requires a terminating expansion."""


class ZeroHasNoTwin(ValidationError):
    """0 is the only value in [0, 1] with a unique expansion in every base."""


class AperiodicInput(ValidationError):
    """Exact cycle analysis requires an eventually periodic expansion."""


# -- automaton / counting -----------------------------------------------------

class StateNotCounted(EngineError):
    """No single per-interval branch count exists for this automaton state."""


class SimultaneousStateEncountered(EngineError):
    """Interval and potential-interval cases coexist; the survivor recursion
    is undefined there and formula mode is refused."""

    def __init__(self, level: int, message: str | None = None):
        self.level = level
        super().__init__(message or f"simultaneous case at level k={level}")


class DeadCycle(EngineError):
    """The survivor count vanishes; growth exponent undefined, set empty."""


# -- geometry / enumeration ---------------------------------------------------

class LevelTooLarge(EngineError):
    """m**k exceeds the configured interval cap; enumeration refused."""


class ANotEmpty(ValidationError):
    """The touching-point count applies only when no full interval survives."""


# -- measure module -----------------------------------------------------------

class NotInF(EngineError):
    """The intersection is empty; no bounds to report."""

    def __init__(self, level: int | None = None, message: str | None = None):
        self.level = level
        super().__init__(message or "translation is not in F: intersection is empty")


class FiniteRepresentation(EngineError):
    """Input belongs on the finite-translation path."""


class NonSparse(EngineError):
    """Formula-mode bounds are restricted to sparse digit sets."""


class BadBand(ValidationError):
    """Greedy approximant target out of range."""


class UnknownAtHorizon(EngineError):
    """The question cannot be settled within the supplied horizon."""


class ComparisonUndecided(EngineError):
    """Exact comparison escalated past the precision cap without separating."""
