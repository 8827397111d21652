"""Advance payments: smaller search interval, then reconciliation.

When the credit was partly paid in advance (APTC), the deduction may not
exceed the balance actually billed, Q - APTC.  At filing, the advance is
reconciled against the credit the return supports: shortfalls are repaid
only up to a banded limitation, which vanishes at four times the poverty
line.
"""

from ptcsolver import (
    PtcContext,
    Scenario,
    optimal_deduction,
    reconcile,
    tax_year_params,
)
from ptcsolver.money import Money

D = Money.from_dollars
params = tax_year_params("2019")


def show(label: str, scenario: Scenario) -> None:
    ctx = PtcContext(scenario, params)
    solution = optimal_deduction(ctx)
    outcome = reconcile(ctx, solution)
    print(f"{label}")
    print(f"  search interval: [0, {scenario.billed_balance}] (billed balance)")
    print(f"  deduction {solution.deduction} ({solution.method.value}), credit {solution.ptc}")
    if outcome.total_benefit is None:
        print(f"  credit covers the advance; extra paid at filing: {outcome.additional_credit}")
    else:
        print(f"  advance exceeded the credit by {scenario.advance_credit - solution.ptc}")
        print(f"  repayment {outcome.repayment} (limitation {outcome.limitation!s}), "
              f"benefit kept {outcome.total_benefit}")
    print()


base = dict(
    poverty_line=D(20000),
    benchmark_premium=D(8303),
    purchased_premium=D(10000),
    income=D(57000),
    tax_year="2019",
)

show("Modest advance, credit covers it:", Scenario(**base, advance_credit=D(2000)))
show("Large advance, repayment capped by the middle band:", Scenario(**base, advance_credit=D(5000)))
show(
    "High income, no limitation (the whole excess comes back):",
    Scenario(
        poverty_line=D(12000),
        benchmark_premium=D(6000),
        purchased_premium=D(6000),
        income=D(100000),
        tax_year="2019",
        advance_credit=D(2500),
    ),
)
show(
    "Income landed under the poverty line, exception applies:",
    Scenario(
        poverty_line=D(16240),
        benchmark_premium=D(9000),
        purchased_premium=D(9000),
        income=D(17000),
        tax_year="2019",
        advance_credit=D(1000),
        below_poverty_exception=True,
    ),
)
