import pytest

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and not report.failed:
        return
    number, title = marker.args
    key = (str(number), title)
    ok = report.passed if report.when == "call" else False
    _CRITERIA[key] = _CRITERIA.get(key, True) and ok


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), ok in sorted(_CRITERIA.items(), key=lambda kv: kv[0][0]):
        terminalreporter.write_line(f"criterion {number:<3} {'PASS' if ok else 'FAIL'}  {title}")
