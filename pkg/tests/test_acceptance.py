"""One test per acceptance criterion, each printing its PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines.
"""

import io

import pytest

from distlat.cli import run
from distlat.verify import CRITERIA, Settings, run_criterion

# filled as the tests run; conftest prints it in the terminal summary
LINES: list[str] = []

# generous wall-clock ceilings; typical runs take a small fraction
BUDGET = {1: 10.0, 2: 60.0, 6: 30.0, 7: 120.0}


@pytest.mark.parametrize("number", [n for n, _, _ in CRITERIA], ids=lambda n: f"criterion-{n}")
def test_criterion(number):
    result = run_criterion(number, Settings())
    print(result.line())
    LINES.append(result.line())
    assert result.passed, result.detail
    assert result.seconds < BUDGET.get(number, 60.0)


def test_command_line_full_suite_capped():
    out, err = io.StringIO(), io.StringIO()
    code = run(["verify", "--suite", "all", "--max", "3", "--format", "text"], out=out, err=err)
    print(out.getvalue(), end="")
    assert code == 0
    assert out.getvalue().count("[PASS]") == len(CRITERIA)
