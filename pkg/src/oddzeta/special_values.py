"""Exact Bernoulli numbers and the closed-form zeta values built from them.

Everything here is either an exact rational (Bernoulli numbers, zeta at
negative integers, the excess upper bound) or a high-precision evaluation of
a closed form (zeta at positive even integers and its excess over one, zeta
at negative odd integers via the reflection identity).
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

from .precision import PrecisionContext, Real

_LOG10_4 = math.log10(4.0)


class BernoulliTable:
    """Write-once growable table of exact Bernoulli numbers (B_1 = -1/2).

    Even-index entries are produced by the binomial recurrence
    sum_{j=0}^{m} C(m+1, j) B_j = 0, skipping odd indices >= 3 (all zero).
    Safe for concurrent use; extension happens under a lock and already
    published entries never change.
    """

    def __init__(self):
        self._even: list[Fraction] = [Fraction(1)]  # B_0, B_2, B_4, ...
        self._lock = threading.Lock()

    def bernoulli(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError(f"Bernoulli index must be >= 0, got {n}")
        if n == 1:
            return Fraction(-1, 2)
        if n % 2 == 1:
            return Fraction(0)
        k = n // 2
        if k >= len(self._even):
            with self._lock:
                self._extend(k)
        return self._even[k]

    def _extend(self, k: int) -> None:
        even = list(self._even)
        for i in range(len(even), k + 1):
            m = 2 * i
            acc = Fraction(m + 1, -2)  # the j = 1 term, C(m+1, 1) * B_1
            for j in range(i):
                acc += math.comb(m + 1, 2 * j) * even[j]
            even.append(-acc / (m + 1))
        self._even = even


_TABLE = BernoulliTable()


def bernoulli(n: int) -> Fraction:
    """Exact B_n under the B_1 = -1/2 convention."""
    return _TABLE.bernoulli(n)


def zeta_neg_int(n: int) -> Fraction:
    """zeta(-n) = (-1)^n B_{n+1}/(n+1) exactly, for integer n >= 0."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return Fraction((-1) ** n) * bernoulli(n + 1) / (n + 1)


def _zeta_even_raw(mp, m: int):
    """zeta(2m) as |B_2m| (2 pi)^(2m) / (2 (2m)!) in the given mpmath context."""
    rational = Fraction(abs(bernoulli(2 * m)), 2 * math.factorial(2 * m))
    return mp.convert(rational) * (2 * mp.pi) ** (2 * m)


def zeta_even(ctx: PrecisionContext, m: int) -> Real:
    """zeta(2m) for m >= 1 from the Bernoulli closed form."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return ctx.real(_zeta_even_raw(ctx._mp, m))


def zeta_even_excess(ctx: PrecisionContext, l: int) -> Real:
    """Z(2l) = zeta(2l) - 1, always in (0, 1).

    The subtraction cancels roughly 2l*log10(2) leading digits, so the
    closed form is evaluated with that many extra digits before rounding
    back; the returned excess keeps full working accuracy even when it is
    as small as 2^(-2l).
    """
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    extra = math.ceil(l * _LOG10_4) + 8
    scratch = ctx.widened(extra)
    return ctx.real(_zeta_even_raw(scratch, l) - 1)


def excess_upper_bound(l: int) -> Fraction:
    """Exact bound F with Z(2l) < F(l) = (1 + 2/(2l-1)) / 2^(2l)."""
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    return Fraction(2 * l + 1, (2 * l - 1) * 4**l)


def zeta_neg_odd(ctx: PrecisionContext, n: int) -> Real:
    """zeta(-2n+1) = (-1)^n (2n-1)! zeta(2n) * 2 / (2 pi)^(2n) for n >= 1.

    Must agree with the exact ``zeta_neg_int(2n-1)``; the two routes form a
    consistency check of the reflection identity at integer arguments.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    mp = ctx._mp
    factor = Fraction((-1) ** n * 2 * math.factorial(2 * n - 1))
    raw = ctx.from_fraction(factor) * _zeta_even_raw(mp, n) / (2 * mp.pi) ** (2 * n)
    return ctx.real(raw)
