"""The applicable-figure curve used to size the premium tax credit.

The applicable figure gives the share of household income a household is
expected to contribute toward health insurance, as a function of income
expressed as a multiple ``m`` of the federal poverty line.  Per the Form
8962 tables it is piecewise linear and monotone nondecreasing, flat below
133% and above 300% of the poverty line, and *right*-continuous with a
single upward jump at m = 1.33.  All evaluation here is exact rational
arithmetic; the jump and the breakpoints are classified without any
floating-point error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .money import round_fraction

# Income-multiple breakpoints shared by every tax year in scope.  A future
# year with different breakpoints requires a schema bump, not a config knob.
BREAKPOINTS: tuple[Fraction, ...] = (
    Fraction(1),
    Fraction(133, 100),
    Fraction(3, 2),
    Fraction(2),
    Fraction(5, 2),
    Fraction(3),
    Fraction(4),
)

_TEN_THOUSANDTH = Fraction(1, 10000)


@dataclass(frozen=True)
class FigureTable:
    """Figure values at the start of each segment, for one tax year.

    The six fields mirror the parameter-file keys ``figure.j`` through
    ``figure.c``: the figure at 100%, 133%, 150%, 200%, 250% and 300% of
    the poverty line.  Values must be nondecreasing, lie in (0, 0.1), and
    carry at most four decimal places.
    """

    j: Fraction
    k: Fraction
    l: Fraction
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self) -> None:
        values = self.as_tuple()
        names = ("j", "k", "l", "a", "b", "c")
        for name, value in zip(names, values):
            if not isinstance(value, Fraction):
                raise TypeError(f"figure.{name}: expected Fraction, got {type(value).__name__}")
            if (value / _TEN_THOUSANDTH).denominator != 1:
                raise ValueError(f"figure.{name}: {value} is finer than ten-thousandth precision")
        if not 0 < values[0]:
            raise ValueError(f"figure.j: must be positive, got {values[0]}")
        if not values[-1] < Fraction(1, 10):
            raise ValueError(f"figure.c: must be below 0.1, got {values[-1]}")
        for (lo_name, lo), (hi_name, hi) in zip(zip(names, values), zip(names[1:], values[1:])):
            if lo > hi:
                raise ValueError(
                    f"figure.{hi_name}: value {hi} is below figure.{lo_name}={lo}; "
                    "figure values must be nondecreasing"
                )

    @staticmethod
    def from_decimals(j: str, k: str, l: str, a: str, b: str, c: str) -> "FigureTable":
        """Build from decimal strings such as ``"0.0201"``."""
        return FigureTable(*(Fraction(v) for v in (j, k, l, a, b, c)))

    def as_tuple(self) -> tuple[Fraction, ...]:
        return (self.j, self.k, self.l, self.a, self.b, self.c)

    def scaled_numerators(self) -> tuple[int, ...]:
        """The six values as integer numerators over 10,000 (for int-only paths)."""
        return tuple(int(v * 10000) for v in self.as_tuple())


def figure_parts(m_num: int, m_den: int, table: FigureTable) -> tuple[int, int]:
    """Exact figure value at m = m_num/m_den as an integer numerator/denominator.

    Implements the segment arithmetic with plain integers so callers that
    evaluate millions of points (the brute-force oracle, the income
    scanner) avoid Fraction construction entirely.  ``m`` must lie in
    [0, 4]; values below 1 take the flat 100%-of-poverty-line figure.
    """
    if m_num < 0 or m_num > 4 * m_den:
        raise ValueError(f"income multiple {Fraction(m_num, m_den)} outside [0, 4]")
    jn, kn, ln_, an, bn, cn = table.scaled_numerators()
    h = 100 * m_num
    if h < 133 * m_den:
        return jn, 10000
    if 2 * m_num < 3 * m_den:
        return 17 * kn * m_den + (ln_ - kn) * (h - 133 * m_den), 170000 * m_den
    if m_num < 2 * m_den:
        return ln_ * m_den + (an - ln_) * (2 * m_num - 3 * m_den), 10000 * m_den
    if 2 * m_num < 5 * m_den:
        return an * m_den + (bn - an) * (2 * m_num - 4 * m_den), 10000 * m_den
    if m_num < 3 * m_den:
        return bn * m_den + (cn - bn) * (2 * m_num - 5 * m_den), 10000 * m_den
    return cn, 10000


def applicable_figure(m: Fraction, table: FigureTable, quantize: bool = False) -> Fraction:
    """Evaluate the applicable figure at an exact income multiple.

    With ``quantize`` the result is additionally rounded half-away-from-zero
    to the nearest ten-thousandth, matching the printed-table convention;
    the default is the exact piecewise-linear value.
    """
    m = Fraction(m)
    num, den = figure_parts(m.numerator, m.denominator, table)
    value = Fraction(num, den)
    if quantize:
        value = round_fraction(value, _TEN_THOUSANDTH)
    return value
