"""One test per acceptance criterion; each prints a pass/fail line.

The N=3 part of criterion 6 runs only with TFPM_EXPENSIVE=1.
"""

import os

import pytest

from tfpmarkov import acceptance

EXPENSIVE = bool(os.environ.get("TFPM_EXPENSIVE"))


def check(res, record_criterion):
    record_criterion(res)
    print(res.line())
    bad = [f"{name}: expected {want}, computed {got}" for name, want, got in res.rows if want != got]
    assert res.passed, "; ".join(bad + res.notes)
    assert res.in_time, f"took {res.seconds:.0f}s, limit {res.limit:.0f}s"


@pytest.mark.parametrize("number", [1, 2, 3, 4, 5, 7, 8, 9])
def test_criterion(number, record_criterion):
    check(acceptance.CRITERIA[number](), record_criterion)


@pytest.mark.slow
def test_criterion_6(record_criterion):
    check(acceptance.criterion_6(expensive=EXPENSIVE), record_criterion)
