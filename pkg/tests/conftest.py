from __future__ import annotations

import random

import pytest

from thinrep.decompose import certificate_problems, decompose
from thinrep.field import GF, QQ

FIELDS = [GF(2), GF(3), GF(101), QQ]
FIELD_IDS = [str(f) for f in FIELDS]


@pytest.fixture(params=FIELDS, ids=FIELD_IDS)
def field(request):
    return request.param


@pytest.fixture
def rng():
    return random.Random(20240611)


def checked(A):
    """Decompose and insist on a valid certificate."""
    dec = decompose(A)
    assert certificate_problems(A, dec) == []
    return dec


_ACCEPTANCE: list[str] = []


@pytest.fixture
def report(request):
    """Record one PASS/FAIL line for an acceptance criterion.

    Call ``report(number, ok, detail)``; if the test raises before reporting,
    a FAIL line is recorded for it.
    """
    done = []

    def _report(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        print(line)
        _ACCEPTANCE.append(line)
        done.append(number)

    yield _report
    if not done:
        _ACCEPTANCE.append(f"criterion ?: FAIL - {request.node.name} raised before reporting")


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE):
            terminalreporter.write_line(line)
