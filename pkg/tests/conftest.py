import os

import pytest
from hypothesis import HealthCheck, settings

from malcev_forge.quotient import build_quotient, generator_matrices
from malcev_forge.verify import build_Gn

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def q33():
    return build_quotient(3, 3)


@pytest.fixture(scope="session")
def q43():
    return build_quotient(4, 3)


@pytest.fixture(scope="session")
def mats33(q33):
    return generator_matrices(q33)


@pytest.fixture(scope="session")
def cert33():
    return build_Gn(3, 3, [1, 2, 3], trials=200, seed=42)


@pytest.fixture(scope="session")
def cert34():
    return build_Gn(3, 4, [1, 2], trials=200, seed=42)


@pytest.fixture
def acceptance_line():
    def record(number, ok, text):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
