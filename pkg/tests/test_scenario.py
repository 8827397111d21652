from __future__ import annotations

import pytest

from ptcsolver import DocumentError, FilingStatus, Scenario, dump_scenario, parse_scenario
from ptcsolver.money import Money

D = Money.from_dollars

BROOKLYN_DOC = """\
# The return that defeats the iterative method.
F = 16240
P = 10390
Q = 10390
I = 71150
tax_year = 2018
"""


def test_parse_minimal_document():
    sc = parse_scenario(BROOKLYN_DOC)
    assert sc.poverty_line == D(16240)
    assert sc.income == D(71150)
    assert sc.advance_credit == D(0)
    assert sc.other_deductions == D(0)
    assert sc.filing_status is FilingStatus.SINGLE
    assert sc.below_poverty_exception is False
    assert sc.student_loan_cap is None
    assert sc.billed_balance == D(10390)


def test_parse_full_document():
    doc = BROOKLYN_DOC + (
        "APTC = 2000\nd0 = 1500.25\nfiling_status = other\n"
        "below_poverty_exception = true\nstudent_loan_k = 2500\n"
    )
    sc = parse_scenario(doc)
    assert sc.advance_credit == D(2000)
    assert sc.other_deductions == D("1500.25")
    assert sc.filing_status is FilingStatus.OTHER
    assert sc.below_poverty_exception is True
    assert sc.student_loan_cap == D(2500)
    assert sc.billed_balance == D(8390)
    assert sc.effective_income == D("69649.75")


def test_overrides_win_key_by_key():
    sc = parse_scenario(BROOKLYN_DOC, {"I": "50000", "APTC": "100"})
    assert sc.income == D(50000)
    assert sc.advance_credit == D(100)
    assert sc.poverty_line == D(16240)  # untouched keys survive


def test_flags_only_scenario():
    sc = parse_scenario(
        None,
        {"F": "12000", "P": "6000", "Q": "6000", "I": "48000", "tax_year": "2018"},
    )
    assert sc.benchmark_premium == D(6000)


@pytest.mark.parametrize(
    "doc,key",
    [
        (BROOKLYN_DOC.replace("I = 71150", "I = 9000"), None),  # I < Q
        (BROOKLYN_DOC + "APTC = 99999\n", None),  # APTC > Q
        (BROOKLYN_DOC.replace("F = 16240", "F = 0"), None),
        (BROOKLYN_DOC + "filing_status = widowed\n", "filing_status"),
        (BROOKLYN_DOC + "below_poverty_exception = maybe\n", "below_poverty_exception"),
        (BROOKLYN_DOC + "APTC = twelve\n", "APTC"),
        (BROOKLYN_DOC + "windfall = 1\n", "windfall"),
        (BROOKLYN_DOC.replace("Q = 10390\n", ""), "Q"),
    ],
)
def test_invalid_documents(doc, key):
    with pytest.raises(DocumentError) as err:
        parse_scenario(doc)
    if key is not None:
        assert err.value.key == key


def test_direct_construction_validates():
    with pytest.raises(ValueError, match="APTC"):
        Scenario(
            poverty_line=D(16240),
            benchmark_premium=D(10390),
            purchased_premium=D(10390),
            income=D(71150),
            tax_year="2018",
            advance_credit=D(-1),
        )


def test_dump_round_trips():
    doc = BROOKLYN_DOC + "APTC = 2000\nstudent_loan_k = 2500\n"
    sc = parse_scenario(doc)
    assert parse_scenario(dump_scenario(sc)) == sc


def test_with_income():
    sc = parse_scenario(BROOKLYN_DOC)
    assert sc.with_income(D(60000)).income == D(60000)
    with pytest.raises(ValueError):
        sc.with_income(D(100))  # below Q
