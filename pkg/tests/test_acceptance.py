"""Acceptance gate: runs every bundled verification suite at its stated
budget and prints one line per criterion."""

import pytest

from hermkq.verify import SUITES, run_suites

BUDGET_SECONDS = {
    1: 10,
    2: 30,
    3: 10,
    4: 60,
    5: 10,
    6: 10,
    7: 300,
    8: 300,
    9: 30,
    10: 10,
    11: 10,
    12: 60,
}


@pytest.fixture(scope="module")
def results():
    return run_suites()


def test_print_summary(results):
    for suite in results["suites"]:
        status = "PASS" if suite["passed"] else "FAIL"
        print(
            f"criterion {suite['criterion']:>2}  {suite['name']:<28} "
            f"{status}  ({suite['seconds']}s)"
        )
    assert results["passed"]


@pytest.mark.parametrize("position", range(len(SUITES)))
def test_criterion(results, position):
    suite = results["suites"][position]
    assert suite["passed"], (suite["name"], suite["details"])
    assert suite["seconds"] < BUDGET_SECONDS[suite["criterion"]], (
        f"criterion {suite['criterion']} exceeded its runtime budget"
    )
