"""Arbitrary-precision substrate: contexts, exact-to-float conversion, constants.

A :class:`PrecisionContext` owns an independent mpmath context sized to the
requested decimal digits plus guard digits.  All numeric results are
:class:`Real` values bound to the context that produced them; arithmetic
between values from different contexts is rejected rather than silently
mixed.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Union

from mpmath.ctx_mp import MPContext

from .errors import (
    ContextMismatchError,
    InvalidPrecisionError,
    UnsupportedConstantError,
)

MIN_DIGITS = 10

#: Names accepted by :func:`fundamental_constant`.
CONSTANT_NAMES = ("pi", "euler_gamma", "ln2", "ln3")

Scalar = Union["Real", int, Fraction]


def _default_guard(digits: int) -> int:
    # The series and closed forms lose only a few digits to cancellation,
    # so a modest guard proportional to the request suffices.
    return max(MIN_DIGITS, math.ceil(digits / 4))


class PrecisionContext:
    """Working precision plus cached fundamental constants.

    ``digits`` is the number of decimal digits the caller wants certified in
    final results; ``guard_digits`` extra digits absorb roundoff and mild
    cancellation.  Instances are immutable after construction (the constant
    cache is write-once) and safe to share between threads.
    """

    __slots__ = ("digits", "guard_digits", "_mp", "_constants", "_lock")

    def __init__(self, digits: int, guard_digits: int | None = None):
        if not isinstance(digits, int) or digits < MIN_DIGITS:
            raise InvalidPrecisionError(
                f"digits must be an integer >= {MIN_DIGITS}, got {digits!r}"
            )
        if guard_digits is None:
            guard_digits = _default_guard(digits)
        if not isinstance(guard_digits, int) or guard_digits < MIN_DIGITS:
            raise InvalidPrecisionError(
                f"guard_digits must be an integer >= {MIN_DIGITS}, got {guard_digits!r}"
            )
        self.digits = digits
        self.guard_digits = guard_digits
        mp = MPContext()
        mp.dps = digits + guard_digits
        self._mp = mp
        self._constants: dict[str, object] = {}
        self._lock = threading.Lock()

    @property
    def working_digits(self) -> int:
        return self.digits + self.guard_digits

    def __repr__(self) -> str:
        return f"PrecisionContext(digits={self.digits}, guard_digits={self.guard_digits})"

    # -- internal helpers (used throughout the package) --

    def real(self, value) -> "Real":
        """Bind a raw mpmath value to this context, rounding to working precision."""
        return Real(self._mp.mpf(value), self)

    def from_fraction(self, q: Fraction | int):
        """Raw mpf for an exact rational, rounded once at working precision."""
        if isinstance(q, int):
            return self._mp.mpf(q)
        return self._mp.convert(q)

    def widened(self, extra_digits: int) -> MPContext:
        """A scratch mpmath context with ``extra_digits`` more working digits.

        Values computed there must be re-bound through :meth:`real` so that
        later arithmetic runs at this context's precision.
        """
        scratch = MPContext()
        scratch.dps = self.working_digits + extra_digits
        return scratch

    def constant(self, name: str):
        """Raw mpf of a cached constant (the four fundamentals plus derived logs)."""
        try:
            return self._constants[name]
        except KeyError:
            pass
        with self._lock:
            if name not in self._constants:
                self._constants[name] = self._compute_constant(name)
            return self._constants[name]

    def _compute_constant(self, name: str):
        mp = self._mp
        if name == "pi":
            return +mp.pi
        if name == "euler_gamma":
            return +mp.euler
        if name == "ln2":
            return +mp.ln2
        if name == "ln3":
            return mp.ln(3)
        if name == "ln_pi":
            return mp.ln(self.constant("pi"))
        if name == "ln_two_pi":
            return self.constant("ln2") + self.constant("ln_pi")
        if name == "ln_three_halves":
            return self.constant("ln3") - self.constant("ln2")
        raise UnsupportedConstantError(
            f"unknown constant {name!r}; supported: {', '.join(CONSTANT_NAMES)}"
        )


class Real:
    """Arbitrary-precision real bound to the context that produced it."""

    __slots__ = ("value", "context")

    def __init__(self, value, context: PrecisionContext):
        self.value = value
        self.context = context

    def _coerce(self, other: Scalar):
        """Raw mpf for the second operand, enforcing context identity."""
        if isinstance(other, Real):
            if other.context is not self.context:
                raise ContextMismatchError(
                    "cannot combine Real values from different contexts "
                    f"({self.context!r} vs {other.context!r})"
                )
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return self.context.from_fraction(other)
        return NotImplemented

    def _wrap(self, raw) -> "Real":
        return Real(raw, self.context)

    def __add__(self, other):
        raw = self._coerce(other)
        return NotImplemented if raw is NotImplemented else self._wrap(self.value + raw)

    __radd__ = __add__

    def __sub__(self, other):
        raw = self._coerce(other)
        return NotImplemented if raw is NotImplemented else self._wrap(self.value - raw)

    def __rsub__(self, other):
        raw = self._coerce(other)
        return NotImplemented if raw is NotImplemented else self._wrap(raw - self.value)

    def __mul__(self, other):
        raw = self._coerce(other)
        return NotImplemented if raw is NotImplemented else self._wrap(self.value * raw)

    __rmul__ = __mul__

    def __truediv__(self, other):
        raw = self._coerce(other)
        return NotImplemented if raw is NotImplemented else self._wrap(self.value / raw)

    def __rtruediv__(self, other):
        raw = self._coerce(other)
        return NotImplemented if raw is NotImplemented else self._wrap(raw / self.value)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        return self._wrap(self.value**exponent)

    def __neg__(self):
        return self._wrap(-self.value)

    def __abs__(self):
        return self._wrap(abs(self.value))

    def _cmp_value(self, other):
        if isinstance(other, Real):
            if other.context is not self.context:
                raise ContextMismatchError("cannot compare Real values from different contexts")
            return other.value
        if isinstance(other, int):
            return other
        return None

    def __lt__(self, other):
        if isinstance(other, Fraction):
            return self.to_fraction() < other
        raw = self._cmp_value(other)
        return NotImplemented if raw is None else self.value < raw

    def __le__(self, other):
        if isinstance(other, Fraction):
            return self.to_fraction() <= other
        raw = self._cmp_value(other)
        return NotImplemented if raw is None else self.value <= raw

    def __gt__(self, other):
        if isinstance(other, Fraction):
            return self.to_fraction() > other
        raw = self._cmp_value(other)
        return NotImplemented if raw is None else self.value > raw

    def __ge__(self, other):
        if isinstance(other, Fraction):
            return self.to_fraction() >= other
        raw = self._cmp_value(other)
        return NotImplemented if raw is None else self.value >= raw

    def __eq__(self, other):
        if isinstance(other, Fraction):
            return self.to_fraction() == other
        if isinstance(other, Real):
            if other.context is not self.context:
                raise ContextMismatchError("cannot compare Real values from different contexts")
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __float__(self) -> float:
        return float(self.value)

    def __repr__(self) -> str:
        return f"Real({self.context._mp.nstr(self.value, self.context.digits)})"

    def to_fraction(self) -> Fraction:
        """Exact rational value of the underlying binary float."""
        return mpf_to_fraction(self.value)

    def decimals(self, places: int) -> str:
        """Decimal string with exactly ``places`` digits after the point."""
        return format_decimals(self.to_fraction(), places)

    def significant(self, digits: int) -> str:
        """Decimal string with ``digits`` significant digits (mpmath style)."""
        return self.context._mp.nstr(self.value, digits)


def mpf_to_fraction(x) -> Fraction:
    """Exact Fraction equal to an mpmath float."""
    sign, man, exp, _ = x._mpf_
    if man == 0:
        if exp != 0:
            raise ValueError(f"cannot convert special value {x!r} to Fraction")
        return Fraction(0)
    value = Fraction(man) * Fraction(2) ** exp
    return -value if sign else value


def format_decimals(q: Fraction, places: int) -> str:
    """Fixed-point decimal string of an exact rational, half-away-from-zero."""
    if places < 0:
        raise ValueError("places must be >= 0")
    scaled = q * 10**places
    whole, rem = divmod(abs(scaled.numerator), scaled.denominator)
    if 2 * rem >= scaled.denominator:
        whole += 1
    text = str(whole).rjust(places + 1, "0")
    sign = "-" if q < 0 else ""
    if places == 0:
        return sign + text
    return f"{sign}{text[:-places]}.{text[-places:]}"


def make_context(digits: int, guard_digits: int | None = None) -> PrecisionContext:
    """Create a context certifying ``digits`` decimal digits in final results."""
    return PrecisionContext(digits, guard_digits)


def fundamental_constant(ctx: PrecisionContext, name: str) -> Real:
    """One of pi, euler_gamma, ln2, ln3 at the context's working precision."""
    if name not in CONSTANT_NAMES:
        raise UnsupportedConstantError(
            f"unknown constant {name!r}; supported: {', '.join(CONSTANT_NAMES)}"
        )
    return Real(ctx.constant(name), ctx)


def to_real(ctx: PrecisionContext, q: Fraction | int) -> Real:
    """Exact rational rounded once to the context's working precision."""
    return Real(ctx.from_fraction(q), ctx)


def ln_pi(ctx: PrecisionContext) -> Real:
    return Real(ctx.constant("ln_pi"), ctx)


def ln_two_pi(ctx: PrecisionContext) -> Real:
    return Real(ctx.constant("ln_two_pi"), ctx)


def ln_three_halves(ctx: PrecisionContext) -> Real:
    return Real(ctx.constant("ln_three_halves"), ctx)
