"""The ten acceptance criteria at full size; one PASS/FAIL line each in the terminal summary."""
import pytest

from ghzlu import Tolerances, tolerance_scope
from ghzlu.acceptance import CRITERIA, run_criterion

RESULTS: list = []


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"{c[0]:02d}-{c[1].replace(' ', '_')}" for c in CRITERIA])
def test_criterion(number):
    result = run_criterion(number, quick=False)
    RESULTS.append(result)
    print(result.line())
    assert result.passed, result.detail


def test_corrupted_tolerances_fail_by_name():
    with tolerance_scope(Tolerances(rho=0.5)):
        result = run_criterion(2)
    assert not result.passed and "rho" in result.detail and result.name == "rho values"
