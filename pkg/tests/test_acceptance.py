"""Acceptance gate: every numbered verification criterion at its stated
tolerance (exact equality everywhere; runtime budgets where stated).

One test per criterion; each prints its own PASS/FAIL line so a plain
``pytest -v tests/test_acceptance.py`` (or ``zpaction verify``) shows the
full scoreboard.
"""

import pytest

from zpaction.acceptance import CHECKS, run_criterion


@pytest.mark.parametrize(
    "number,title", [(num, title) for num, title, _ in CHECKS], ids=[f"criterion-{n}" for n, _, _ in CHECKS]
)
def test_criterion(number, title):
    result = run_criterion(number)
    status = "PASS" if result.passed else "FAIL"
    print(f"{status} {result.number:2d} {result.title}: {result.detail} ({result.seconds:.2f}s)")
    assert result.passed, f"criterion {number} ({title}): {result.detail}"
