import pytest

import gen
from acceptance_log import RESULTS


@pytest.fixture(scope="session")
def fixture_bundle():
    return gen.fixture_bundle()


@pytest.fixture(scope="session")
def phi0():
    return gen.fixture_higgs()


@pytest.fixture(scope="session")
def unstable():
    return gen.unstable_bundle()


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        ok, detail = RESULTS[k]
        terminalreporter.write_line(f"CRITERION {k}: {'PASS' if ok else 'FAIL'} - {detail}")
