import pytest

from figprimes import build_set

from oracles import figurate_oracle

# criterion label -> (passed, detail), filled by test_acceptance
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def oracle_5000():
    return figurate_oracle(5000)


@pytest.fixture(scope="session")
def small_set():
    return build_set(5000)


@pytest.fixture(scope="session")
def medium_set():
    return build_set(20_001)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, (ok, detail) in ACCEPTANCE.items():
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
