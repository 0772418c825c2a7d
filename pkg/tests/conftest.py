import pytest

from aloop import constructions as C
from aloop import lie


def _fixtures():
    return {
        "Z2": C.cyclic(2),
        "Z3": C.cyclic(3),
        "Z4": C.cyclic(4),
        "V4": C.elementary_abelian_2(2),
        "Z6": C.cyclic(6),
        "S3": C.symmetric(3),
        "D4": C.dihedral(4),
        "F16": lie.loop_from_algebra(lie.filiform(4)),
        "E8": lie.loop_from_algebra(lie.heisenberg()),
    }


FIXTURES = _fixtures()


@pytest.fixture(scope="session")
def loops():
    return dict(FIXTURES)


@pytest.fixture(scope="session")
def f16():
    return FIXTURES["F16"]


@pytest.fixture(scope="session")
def a5():
    return C.alternating(5)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item._failed = rep.failed


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, detail = RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
