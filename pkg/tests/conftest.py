import pytest
from hypothesis import HealthCheck, settings

from orthoroots import system

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

SMALL = ["D4", "D6", "D8", "E7"]
ALL = ["D4", "D6", "D8", "D10", "E7", "E8"]


@pytest.fixture(scope="session")
def d6():
    return system("D6")


@pytest.fixture(scope="session")
def e7():
    return system("E7")


@pytest.fixture(scope="session")
def e8():
    return system("E8")


# criterion number -> (passed, one-line description); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {text}")
