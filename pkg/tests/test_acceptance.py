"""Acceptance suite: one PASS/FAIL line per criterion, each against its runtime budget.

The lines are printed in pytest's terminal summary, or directly when this file
is run as a script.
"""
import sys

import pytest

from clusterscat.verify import CHECKS

CRITERIA = [
    "aff-wall",
    "narayana",
    "f-lemmas",
    "finite-rank2",
    "theta-examples",
    "camb-consist",
    "greg-shards",
    "pop-oracle",
    "hypergeom",
]

REPORT = {}


@pytest.mark.parametrize("name", CRITERIA)
def test_criterion(name):
    result = CHECKS[name]()
    REPORT[name] = result
    assert result.passed, "\n".join(result.details)


def report_lines():
    return [REPORT[n].line() for n in CRITERIA if n in REPORT]


if __name__ == "__main__":
    failed = False
    for name in CRITERIA:
        r = CHECKS[name]()
        print(r.line())
        failed |= not r.passed
    sys.exit(1 if failed else 0)
