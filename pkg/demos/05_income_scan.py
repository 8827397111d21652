"""Mapping where the guidance breaks, empirically.

Sweeping the Brooklyn-shaped return across incomes shows two distinct
failure regions.  Near four times the poverty line, the iteration
oscillates across the eligibility cliff while a large credit is at
stake.  Near 133% of the poverty line, the constraint d + credit(d) = Q
can have no solution at all (the credit jumps over it), yet a certified
optimum still exists and the bisection finds it.
"""

import io

from ptcsolver import Scenario, scan_divergence, tax_year_params, write_csv
from ptcsolver.money import Money

D = Money.from_dollars
params = tax_year_params("2018")

template = Scenario(
    poverty_line=D(16240),
    benchmark_premium=D(10390),
    purchased_premium=D(10390),
    income=D(71150),  # replaced per grid point
    tax_year="2018",
)

print("Sweep 1: incomes $69,000..$72,000 in $250 steps (near the m=4 cliff)")
result = scan_divergence(template, D(69000), D(72000), D(250), params)
buffer = io.StringIO()
write_csv(result.records, buffer)
print(buffer.getvalue().rstrip())
print()
for kind, spans in result.intervals.items():
    rendered = ", ".join(f"[{lo}, {hi}]" for lo, hi in spans) or "none"
    print(f"  {kind}: {rendered}")
print()
print("Inside the divergence interval the simplified method reports $0 while")
print("thousands are recoverable; above it the credit is genuinely $0, so the")
print("(still oscillating) iteration no longer costs anything.")

print()
print("Sweep 2: incomes $21,900..$22,350 in $50 steps (near the m=1.33 jump)")
result2 = scan_divergence(template, D(21900), D(22350), D(50), params)
buffer2 = io.StringIO()
write_csv(result2.records, buffer2)
print(buffer2.getvalue().rstrip())
print()
for kind, spans in result2.intervals.items():
    rendered = ", ".join(f"[{lo}, {hi}]" for lo, hi in spans) or "none"
    print(f"  {kind}: {rendered}")
print()
print("equation_solvable=false marks incomes where no deduction makes")
print("d + credit(d) hit Q within $1: the certified optimum satisfies the")
print("constraint strictly, and one more dollar of deduction overshoots.")
