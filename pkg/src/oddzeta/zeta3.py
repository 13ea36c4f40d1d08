"""The zeta(3) pipeline.

zeta(3) is written as -8 pi^2 (A - S) where A is a closed logarithmic
constant and S = sum_l c_l Z(2l) is a series over the even-zeta excesses
that gains roughly 1.2 decimal digits per term.  The series coefficient
splits into four partial fractions whose pieces admit two closed log forms
and two rapidly summed remainders, giving an equivalent reduced formula.
Slowly converging infinite-product forms of the summed pieces are provided
in log form for comparison, plus two log-series identities used by the
closed forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

from .precision import PrecisionContext, Real, format_decimals
from .special_values import zeta_even, zeta_even_excess

if TYPE_CHECKING:
    from .truncation import TruncationPlan

#: Selectors for :func:`log_series_identity`, named by their closed forms.
IDENTITY_ONE_MINUS_LN2 = "one_minus_ln2"
IDENTITY_LOG_PI_HALF = "log_pi_half"


def series_coefficient(l: int) -> Fraction:
    """Exact series coefficient c_l = 4^-l / (16 l (l+1) (2l+1) (2l+3))."""
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    return Fraction(1, 16 * 4**l * l * (l + 1) * (2 * l + 1) * (2 * l + 3))


def series_coefficient_split(l: int) -> Fraction:
    """The same coefficient assembled from its four partial fractions.

    Equals :func:`series_coefficient` exactly for every l; the split is what
    makes the closed-form reduction possible.
    """
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    parts = (
        Fraction(1, 3 * l)
        - Fraction(2, 2 * l + 1)
        + Fraction(1, l + 1)
        - Fraction(2, 3 * (2 * l + 3))
    )
    return Fraction(1, 16 * 4**l) * parts


def series_sum(ctx: PrecisionContext, m: int) -> Real:
    """Partial series sum S_m = sum_{l=1}^{m} c_l Z(2l); strictly increasing in m."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    total = ctx._mp.mpf(0)
    for l in range(1, m + 1):
        total += ctx.from_fraction(series_coefficient(l)) * zeta_even_excess(ctx, l).value
    return ctx.real(total)


def constant_term(ctx: PrecisionContext) -> Real:
    """The closed constant A = (ln(2 pi)/3 + 9 ln(3/2) - 9/2) / 16."""
    mp = ctx._mp
    raw = (ctx.constant("ln_two_pi") / 3 + 9 * ctx.constant("ln_three_halves") - mp.mpf(9) / 2) / 16
    return ctx.real(raw)


def zeta3_bracket(ctx: PrecisionContext, m: int) -> Real:
    """A - S_m: the finite part of Gamma*zeta at -2, truncated after m terms."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return ctx.real(constant_term(ctx).value - series_sum(ctx, m).value)


def zeta3(ctx: PrecisionContext, plan: "TruncationPlan") -> Real:
    """zeta(3) = -8 pi^2 (A - S_m) with m taken from the truncation plan.

    The absolute error is certified to at most 8 pi^2 times the plan's tail
    bound.
    """
    mp = ctx._mp
    raw = -8 * mp.pi**2 * zeta3_bracket(ctx, plan.m).value
    return ctx.real(raw)


@dataclass(frozen=True)
class SeriesSplit:
    """The four partial-fraction components of the series sum.

    ``closed_pos``/``closed_neg`` are evaluated from their closed log forms
    (they absorb their full tails); ``summed_pos``/``summed_neg`` are the two
    directly summed remainders truncated at the requested m.  Signs are fixed:
    +, -, +, - respectively.
    """

    closed_pos: Real
    closed_neg: Real
    summed_pos: Real
    summed_neg: Real

    def total(self) -> Real:
        return self.closed_pos + self.closed_neg + self.summed_pos + self.summed_neg


def split_parts(ctx: PrecisionContext, m: int) -> SeriesSplit:
    """Split S into closed log forms plus two direct sums over l <= m."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    mp = ctx._mp
    ln2 = ctx.constant("ln2")
    ln3 = ctx.constant("ln3")
    ln_pi = ctx.constant("ln_pi")
    # closed forms: (ln(pi/2) - ln(4/3))/48 and (ln(3 sqrt 2) - 3/2)/8
    closed_pos = ((ln_pi - ln2) - (2 * ln2 - ln3)) / 48
    closed_neg = (ln3 + ln2 / 2 - mp.mpf(3) / 2) / 8
    summed_pos = mp.mpf(0)
    summed_neg = mp.mpf(0)
    for l in range(1, m + 1):
        excess = zeta_even_excess(ctx, l).value
        summed_pos += excess / ((l + 1) * 4**l)
        summed_neg += excess / ((2 * l + 3) * 4**l)
    return SeriesSplit(
        closed_pos=ctx.real(closed_pos),
        closed_neg=ctx.real(closed_neg),
        summed_pos=ctx.real(summed_pos / 16),
        summed_neg=ctx.real(-summed_neg / 24),
    )


def slow_product_logs(ctx: PrecisionContext, n_max: int) -> tuple[Real, Real]:
    """Log-form partial products for the two summed split components.

    Returns ``(pos, neg)`` where ``pos`` approaches ``summed_pos``'s full
    value and ``neg`` approaches ``summed_neg``'s, both only at O(1/n_max):
    the products converge like the harmonic-squared series they came from.
    Sums of logarithms replace literal products so nothing overflows and the
    slow convergence stays measurable.
    """
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    mp = ctx._mp
    pos = mp.mpf(0)
    neg = mp.mpf(0)
    twelfth = mp.mpf(1) / 12
    for n in range(2, n_max + 1):
        pos += 1 + 4 * n**2 * mp.log(1 - mp.mpf(1) / (4 * n**2))
        # 2*atanh(x) == ln((1+x)/(1-x)), stable for small x
        neg += n**3 * 2 * mp.atanh(mp.mpf(1) / (2 * n)) - n**2 - twelfth
    return ctx.real(-pos / 16), ctx.real(-neg / 6)


def zeta3_reduced(ctx: PrecisionContext, m: int) -> Real:
    """zeta(3) from the reduced formula with the closed forms absorbed.

    -8 pi^2 (5/12 ln 3 - 13/24 ln 2 - 3/32 - summed_pos - summed_neg); the
    two remaining sums are truncated at m.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    mp = ctx._mp
    parts = split_parts(ctx, m)
    bracket = (
        ctx.from_fraction(Fraction(5, 12)) * ctx.constant("ln3")
        - ctx.from_fraction(Fraction(13, 24)) * ctx.constant("ln2")
        - ctx.from_fraction(Fraction(3, 32))
        - parts.summed_pos.value
        - parts.summed_neg.value
    )
    return ctx.real(-8 * mp.pi**2 * bracket)


def log_series_identity(ctx: PrecisionContext, which: str, m: int) -> tuple[Real, Real]:
    """Truncated left side and exact right side of a log-series identity.

    ``one_minus_ln2``: sum_l zeta(2l)/((2l+1) 4^l) = (1 - ln 2)/2.
    ``log_pi_half``:   sum_l zeta(2l)/(l 4^l) = ln(pi/2).
    The truncation residual decays at least as fast as 4^-m.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    mp = ctx._mp
    if which == IDENTITY_ONE_MINUS_LN2:
        weight = lambda l: (2 * l + 1) * 4**l
        rhs = (1 - ctx.constant("ln2")) / 2
    elif which == IDENTITY_LOG_PI_HALF:
        weight = lambda l: l * 4**l
        rhs = ctx.constant("ln_pi") - ctx.constant("ln2")
    else:
        raise ValueError(
            f"unknown identity {which!r}; expected "
            f"{IDENTITY_ONE_MINUS_LN2!r} or {IDENTITY_LOG_PI_HALF!r}"
        )
    lhs = mp.mpf(0)
    for l in range(1, m + 1):
        lhs += zeta_even(ctx, l).value / weight(l)
    return ctx.real(lhs), ctx.real(rhs)


@dataclass(frozen=True)
class SeriesWalkthrough:
    """A fixed-decimal evaluation of the zeta(3) pipeline.

    Mirrors hand computation at limited precision: every series term and the
    closed constant are rounded to ``decimals`` places *before* being
    combined, so the reported strings reproduce what that arithmetic
    actually prints (including its last-digit artifacts).
    """

    decimals: int
    term_strings: tuple[str, ...]
    constant_string: str      # A rounded
    series_string: str        # -B: sum of the rounded terms
    bracket_string: str       # A + B from the rounded pieces
    zeta3: Real               # -8 pi^2 times the rounded bracket
    zeta3_string: str


def quantized_walkthrough(
    ctx: PrecisionContext,
    m: int = 5,
    decimals: int = 11,
    out_decimals: int = 9,
) -> SeriesWalkthrough:
    """Evaluate zeta(3) with intermediates quantized to ``decimals`` places."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    mp = ctx._mp
    term_strings = []
    rounded_sum = Fraction(0)
    for l in range(1, m + 1):
        term = ctx.from_fraction(series_coefficient(l)) * zeta_even_excess(ctx, l).value
        text = format_decimals(ctx.real(term).to_fraction(), decimals)
        term_strings.append(text)
        rounded_sum += Fraction(text)
    constant_string = format_decimals(constant_term(ctx).to_fraction(), decimals)
    bracket = Fraction(constant_string) - rounded_sum
    raw = -8 * mp.pi**2 * ctx.from_fraction(bracket)
    value = ctx.real(raw)
    return SeriesWalkthrough(
        decimals=decimals,
        term_strings=tuple(term_strings),
        constant_string=constant_string,
        series_string=format_decimals(-rounded_sum, decimals),
        bracket_string=format_decimals(bracket, decimals),
        zeta3=value,
        zeta3_string=value.decimals(out_decimals),
    )
