import numpy as np
import pytest

HOST = [[30, 46, 31], [65, 75, 22], [35, 98, 59]]
HOST_STEGO = [[31, 46, 30], [65, 75, 23], [34, 98, 59]]


@pytest.fixture
def host():
    return np.array(HOST, dtype=np.uint8)


@pytest.fixture
def rng():
    return np.random.default_rng(20151018)


_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by this test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when not in ("setup", "call"):
        return
    number, title = marker.args
    _, status, elapsed = _CRITERIA.get(number, (title, "PASS", 0.0))
    if report.failed:
        status = "FAIL"
    _CRITERIA[number] = (title, status, elapsed + report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, status, duration = _CRITERIA[number]
        terminalreporter.write_line(f"{status} criterion {number}: {title} ({duration:.2f}s)")
