"""Premium tax credit as a function of the self-employed deduction.

The credit for a household with income M is::

    credit = min(Q, max(0, P - figure(M/F) * M))

where P is the benchmark premium, Q the purchased premium, F the poverty
line and ``figure`` the applicable-figure curve.  Taking a deduction ``d``
moves household income to ``I - d0 - d`` (minus any chained student-loan
deduction), so the credit becomes a function of ``d``: monotone
nondecreasing and left-continuous wherever the household stays
credit-eligible, with upward jumps inherited from the figure curve's
discontinuity at 133% of the poverty line.

Households are credit-eligible when M/F lies in [1, 4] (the m = 4 boundary
is eligible, m > 4 is not).  Below the poverty line the credit is zero
unless the scenario's below-poverty exception applies, in which case the
100%-of-poverty-line figure is used for M/F in [0, 1).

Evaluation is exact: all arithmetic is integer cents and exact rationals,
with rounding applied per the context's :class:`RoundingMode` to each
intermediate product and difference before clamping.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .figures import applicable_figure
from .money import Money, RoundingMode, money_ratio, round_money
from .params import TaxYearParams
from .scenario import Scenario

# Student-loan interest phase-out window (cents) and its width.
_SL_FLOOR_C = 70_000 * 100
_SL_CEIL_C = 85_000 * 100
_SL_WIDTH_C = _SL_CEIL_C - _SL_FLOOR_C


@dataclass(frozen=True)
class PtcContext:
    """A scenario bound to its tax-year parameters and rounding cadence.

    ``rounding`` applies to every intermediate product and difference
    before comparison or clamping.  CENT matches published guidance;
    DOLLAR reproduces worked examples that round intermediate steps to
    whole dollars.
    """

    scenario: Scenario
    params: TaxYearParams
    rounding: RoundingMode = RoundingMode.CENT


def household_income(ctx: PtcContext, deduction: Money) -> Money:
    """Income after the fixed deductions and the health-insurance deduction."""
    return ctx.scenario.effective_income - deduction


def student_loan_deduction(cap: Money, magi: Money) -> Money:
    """Student-loan interest deduction after its income phase-out.

    Full ``cap`` at or below $70,000 of modified AGI, zero at or above
    $85,000, linear in between (rounded to the cent).  Monotone
    nonincreasing in income.
    """
    if cap < Money(0):
        raise ValueError(f"student-loan cap must be non-negative, got {cap}")
    if magi.cents <= _SL_FLOOR_C:
        return cap
    if magi.cents >= _SL_CEIL_C:
        return Money(0)
    share = Fraction(_SL_CEIL_C - magi.cents, _SL_WIDTH_C)
    return round_money(cap.dollars * share, RoundingMode.CENT)


def chained_household_income(ctx: PtcContext, deduction: Money) -> Money:
    """Household income including the student-loan chaining, when configured.

    The phase-out is evaluated once against income with the health
    deduction applied and the student-loan deduction itself at zero, then
    subtracted; no inner fixed point is run.
    """
    magi = household_income(ctx, deduction)
    cap = ctx.scenario.student_loan_cap
    if cap is None:
        return magi
    return magi - student_loan_deduction(cap, magi)


def max_deduction_for_income_floor(ctx: PtcContext, floor: Money) -> Money:
    """Largest deduction (capped at the billed balance) keeping chained
    household income at or above ``floor``.

    Chained income is strictly decreasing in the deduction, so the cutoff
    is well defined.  Returns a negative amount when even a zero
    deduction cannot reach the floor (the household is ineligible on
    income grounds alone).
    """
    sc = ctx.scenario
    billed = sc.billed_balance
    if sc.student_loan_cap is None:
        return min(billed, sc.effective_income - floor)
    if chained_household_income(ctx, Money(0)) < floor:
        return Money(-1)
    if chained_household_income(ctx, billed) >= floor:
        return billed
    lo, hi = 0, billed.cents  # income(lo) >= floor > income(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if chained_household_income(ctx, Money(mid)) >= floor:
            lo = mid
        else:
            hi = mid
    return Money(lo)


def expected_contribution(income: Money, figure: Fraction, rounding: RoundingMode) -> Money:
    """The affordable share of income: ``figure * income`` rounded per mode."""
    if income < Money(0):
        raise ValueError(f"income must be non-negative, got {income}")
    if not 0 < figure < Fraction(1, 10):
        raise ValueError(f"figure must lie in (0, 0.1), got {figure}")
    return income.scaled(figure, rounding)


def ptc_base(ctx: PtcContext, income: Money) -> Money:
    """Credit at a given household income, assuming credit eligibility.

    Callers must handle the ineligible branches (income above four times
    or, absent the exception, below the poverty line) before calling.
    """
    sc = ctx.scenario
    m = money_ratio(income, sc.poverty_line)
    if m > 4:
        raise ValueError(f"income multiple {m} above 4; no credit applies")
    if m < 1 and not sc.below_poverty_exception:
        raise ValueError(f"income multiple {m} below 1 without the below-poverty exception")
    if m < 0:
        raise ValueError("household income is negative")
    figure = applicable_figure(m, ctx.params.figure_table)
    contribution = expected_contribution(income, figure, ctx.rounding)
    remainder = round_money((sc.benchmark_premium - contribution).dollars, ctx.rounding)
    return min(sc.purchased_premium, max(Money(0), remainder))


def credit_cents_fn(ctx: PtcContext) -> Callable[[int], int]:
    """Bind the scenario into a cents-level credit evaluator.

    Returns a function mapping a deduction in cents to the credit in
    cents, used by the iteration, the bisection search and the
    brute-force oracle.  It is exactly equal to :func:`ptc_of_deduction`
    on the valid domain but avoids per-call object construction, which
    matters when scanning millions of lattice points.
    """
    return _credit_cents_fn_cached(ctx)


@lru_cache(maxsize=128)
def _credit_cents_fn_cached(ctx: PtcContext) -> Callable[[int], int]:
    sc = ctx.scenario
    fc = sc.poverty_line.cents
    pc = sc.benchmark_premium.cents
    qc = sc.purchased_premium.cents
    base = sc.effective_income.cents
    exception = sc.below_poverty_exception
    dollar_mode = ctx.rounding is RoundingMode.DOLLAR
    sl_cap_c = None if sc.student_loan_cap is None else sc.student_loan_cap.cents
    jn, kn, ln_, an, bn, cn = ctx.params.figure_table.scaled_numerators()
    four_f = 4 * fc

    def credit_cents(dc: int) -> int:
        mc = base - dc
        if sl_cap_c is not None:
            if mc <= _SL_FLOOR_C:
                mc -= sl_cap_c
            elif mc < _SL_CEIL_C:
                mc -= (2 * sl_cap_c * (_SL_CEIL_C - mc) + _SL_WIDTH_C) // (2 * _SL_WIDTH_C)
        if mc > four_f or mc < 0:
            return 0
        if mc < fc and not exception:
            return 0
        h = 100 * mc
        if h < 133 * fc:
            fn, fd = jn, 10000
        elif 2 * mc < 3 * fc:
            fn = 17 * kn * fc + (ln_ - kn) * (h - 133 * fc)
            fd = 170000 * fc
        elif mc < 2 * fc:
            fn = ln_ * fc + (an - ln_) * (2 * mc - 3 * fc)
            fd = 10000 * fc
        elif 2 * mc < 5 * fc:
            fn = an * fc + (bn - an) * (2 * mc - 4 * fc)
            fd = 10000 * fc
        elif mc < 3 * fc:
            fn = bn * fc + (cn - bn) * (2 * mc - 5 * fc)
            fd = 10000 * fc
        else:
            fn, fd = cn, 10000
        u = fn * mc
        if dollar_mode:
            ec = 100 * ((2 * u + 100 * fd) // (200 * fd))
        else:
            ec = (2 * u + fd) // (2 * fd)
        diff = pc - ec
        if dollar_mode:
            if diff >= 0:
                diff = ((diff + 50) // 100) * 100
            else:
                diff = -(((-diff + 50) // 100) * 100)
        if diff <= 0:
            return 0
        return diff if diff < qc else qc

    return credit_cents


def ptc_of_deduction(ctx: PtcContext, deduction: Money) -> Money:
    """The extended credit-of-deduction function.

    Zero above four times the poverty line and, without the exception,
    below it; otherwise the base credit at the post-deduction household
    income.  The deduction must lie in [0, Q - APTC].
    """
    if not Money(0) <= deduction <= ctx.scenario.billed_balance:
        raise ValueError(
            f"deduction {deduction} outside [0, {ctx.scenario.billed_balance}] "
            "(the billed balance Q - APTC)"
        )
    return Money(credit_cents_fn(ctx)(deduction.cents))


def ptc_of_deduction_reference(ctx: PtcContext, deduction: Money) -> Money:
    """Transparent Fraction-based twin of :func:`ptc_of_deduction`.

    Composes the public operations step by step; kept as an executable
    cross-check of the integer kernel (the test suite asserts exact
    agreement across random scenarios).
    """
    sc = ctx.scenario
    income = chained_household_income(ctx, deduction)
    if income < Money(0):
        return Money(0)
    m = money_ratio(income, sc.poverty_line)
    if m > 4:
        return Money(0)
    if m < 1 and not sc.below_poverty_exception:
        return Money(0)
    return ptc_base(ctx, income)
