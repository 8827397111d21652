"""Watching the guidance's iterative method fail on a real-shaped return.

A self-employed household in Brooklyn, 2018: poverty line $16,240,
benchmark and purchased premium $10,390 a year, earned income $71,150.
The iterative calculation method bounces between two points forever, the
do-not-use condition triggers, and the simplified fallback reports a $0
credit, which is thousands of dollars short of what the household can
legally claim.
"""

from ptcsolver import (
    PtcContext,
    RoundingMode,
    Scenario,
    liminf_deduction,
    run_iteration,
    simplified_method,
    tax_year_params,
)
from ptcsolver.money import Money

D = Money.from_dollars

scenario = Scenario(
    poverty_line=D(16240),
    benchmark_premium=D(10390),
    purchased_premium=D(10390),
    income=D(71150),
    tax_year="2018",
)
ctx = PtcContext(scenario, tax_year_params("2018"), RoundingMode.DOLLAR)

outcome = run_iteration(ctx)
print("Iterative calculation method, rounding intermediate steps to dollars:")
print(f"{'n':>3}  {'credit':>12}  {'deduction':>12}")
for p in outcome.trace:
    print(f"{p.index:>3}  {str(p.credit):>12}  {str(p.deduction):>12}")

print()
print(f"status: {outcome.status.value}")
cycle = outcome.cycle
print(f"the trace revisits its start: a cycle of period {cycle.period}")
print("why: deducting $10,390 leaves income $60,760 (under four times the")
print("poverty line, so a $4,581 credit), but deducting only $5,809 leaves")
print("income $65,341 (over the cliff, so $0 credit). Each answer undoes")
print("the other, and the gap never drops under the $1 convergence test.")

d2, c3 = simplified_method(ctx)
print()
print(f"simplified fallback: deduction {d2}, credit {c3}")
print(f"liminf refinement some software applies: deduction {liminf_deduction(outcome)},")
print("still a $0 credit. This is what the household was told it deserved.")

print()
print("Same method at earned income $50,000 instead, penny rounding:")
ctx2 = PtcContext(scenario.with_income(D(50000)), tax_year_params("2018"))
outcome2 = run_iteration(ctx2)
for p in outcome2.trace:
    print(f"{p.index:>3}  {str(p.credit):>12}  {str(p.deduction):>12}")
print(f"status: {outcome2.status.value} (here the oscillation contracts and settles)")
