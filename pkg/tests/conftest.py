import math

import pytest

from qwdiffusion import kernels, new_localized_state

SYMMETRIC = (1 / math.sqrt(2), 1 / math.sqrt(2))

_criteria = []


@pytest.fixture(params=kernels.BACKENDS)
def backend(request):
    """Run the test once per available kernel backend."""
    previous = kernels.backend
    kernels.set_backend(request.param)
    yield request.param
    kernels.set_backend(previous)


@pytest.fixture
def start():
    def make(horizon, coin=SYMMETRIC):
        return new_localized_state(coin, horizon)

    return make


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        label, text = marker.args
        callspec = getattr(item, "callspec", None)
        if callspec is not None and "backend" in callspec.params:
            text = f"{text} [{callspec.params['backend']}]"
        _criteria.append((label, text, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, text, outcome in _criteria:
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] {label:<6} {text}")
