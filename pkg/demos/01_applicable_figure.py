"""The applicable-figure curve: exact, piecewise linear, one jump.

The share of income a household is expected to contribute toward health
insurance depends on where its income sits relative to the federal
poverty line.  This script walks the 2018 curve, shows the single upward
jump at 133% of the poverty line, and demonstrates that evaluation is
right-continuous everywhere else.
"""

from fractions import Fraction

from ptcsolver import BREAKPOINTS, applicable_figure, tax_year_params

table = tax_year_params("2018").figure_table

print("2018 applicable figure at the segment breakpoints")
print(f"{'m':>6}  figure")
for m in BREAKPOINTS:
    print(f"{float(m):>6.2f}  {applicable_figure(m, table)!s:>9}  ({float(applicable_figure(m, table)):.4f})")

print()
print("A fine walk across the jump at m = 1.33:")
for n in (13200, 13290, 13299, 13300, 13301, 13400):
    m = Fraction(n, 10000)
    f = applicable_figure(m, table)
    print(f"  m = {float(m):.4f} -> {float(f):.6f}")
print("Below 1.33 the figure is flat at 0.0201; at 1.33 it jumps to 0.0302.")
print("That jump is what ultimately breaks the fixed-point iteration nearby.")

print()
print("Right continuity at every other breakpoint (epsilon = 1e-9):")
eps = Fraction(1, 10**9)
for beta in BREAKPOINTS[2:-1]:
    at = applicable_figure(beta, table)
    right = applicable_figure(beta + eps, table)
    print(f"  beta = {float(beta):.2f}: f(beta) = {float(at):.6f}, "
          f"f(beta + eps) - f(beta) = {float(right - at):.2e}")

print()
print("Printed-table convention: quantize to the nearest ten-thousandth.")
for n in (225, 287, 313):
    m = Fraction(n, 100)
    exact = applicable_figure(m, table)
    quantized = applicable_figure(m, table, quantize=True)
    print(f"  {n}% of the poverty line: exact {float(exact):.6f}, table value {float(quantized):.4f}")
