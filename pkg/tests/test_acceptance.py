"""Acceptance criteria, one test each; every test prints its PASS/FAIL line."""

import pytest

from skein_f import selftest
from skein_f.catalog import bundled

NUMBERS = [n for n, _, _ in selftest.CRITERIA] + [11]


@pytest.fixture(scope="module")
def context():
    return selftest.Context(bundled(), threads=1)


@pytest.mark.parametrize("number", NUMBERS, ids=[f"criterion_{n:02d}" for n in NUMBERS])
def test_criterion(number, context, capsys):
    result = selftest.run_one(number, context.catalog, context.threads, context)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
