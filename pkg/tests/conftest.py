import os

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    name = marker.args[0]
    if report.when == "call" or report.failed:
        ok = _CRITERIA.get(name, True) and report.passed
        _CRITERIA[name] = ok


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok in _CRITERIA.items():
        terminalreporter.write_line("{0}  {1}".format("PASS" if ok else "FAIL", name))
