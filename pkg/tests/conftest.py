import random

import pytest

from mcheck import parse_aiger

from fixtures import CNT2_AAG, SAFE1_AAG, UNSAFE1_AAG

# One line per acceptance criterion, echoed after the run summary so the
# PASS/FAIL verdicts survive pytest's output capture.
ACCEPTANCE_REPORT = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_REPORT:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_REPORT:
            terminalreporter.write_line(line)


@pytest.fixture
def safe1():
    return parse_aiger(SAFE1_AAG.encode())


@pytest.fixture
def unsafe1():
    return parse_aiger(UNSAFE1_AAG.encode())


@pytest.fixture
def cnt2():
    return parse_aiger(CNT2_AAG.encode())


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
