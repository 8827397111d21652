"""The fix: bisection on the no-double-dipping constraint.

The right deduction is the largest d with d + credit(d) <= Q.  The map
d + credit(d) is monotone increasing and left-continuous, so a bisection
that keeps a feasible left end and an infeasible right end homes in on
the answer even across the credit function's jumps, exactly where the
fixed-point iteration gives up.
"""

from ptcsolver import (
    PtcContext,
    RoundingMode,
    Scenario,
    optimal_deduction,
    reconcile,
    simplified_method,
    tax_year_params,
    whole_dollar_view,
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

solution = optimal_deduction(ctx)
print("Bisection with dollar-rounded midpoints and a $1 stopping width:")
print(f"{'step':>4}  {'feasible end':>14}  {'infeasible end':>14}")
for i, (a, b) in enumerate(solution.trace):
    print(f"{i:>4}  {str(a):>14}  {str(b):>14}")

print()
print(f"deduction: {solution.deduction}")
print(f"credit:    {solution.ptc}")
cert = solution.certificate
print(f"certificate (recomputed, not copied from the search):")
print(f"  d + credit(d)     = {cert.value_at}  <= Q = {cert.threshold}")
print(f"  d+$1 + credit(.)  = {cert.value_above}  >  Q")
print("Anyone can verify those two lines by hand; no bisection needed.")

d2, c3 = simplified_method(ctx)
print()
print(f"simplified method would have reported: deduction {d2}, credit {c3}")
print(f"benefit recovered by solving properly: {solution.ptc - c3}")

print()
print("Penny-precision mode (the default) and the form-ready entry:")
ctx_cent = PtcContext(scenario, tax_year_params("2018"))
precise = optimal_deduction(ctx_cent)
whole_d, whole_ptc = whole_dollar_view(ctx_cent, precise)
print(f"  cent-precise: deduction {precise.deduction}, credit {precise.ptc}")
print(f"  whole-dollar: deduction {whole_d}, credit {whole_ptc}")

outcome = reconcile(ctx, solution)
print()
print(f"no advance payments were sent, so the whole credit arrives at filing: "
      f"{outcome.additional_credit}")
