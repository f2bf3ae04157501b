import pytest

_results: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    # a criterion fails if any phase fails; it passes once its call phase passed
    if report.failed:
        _results[number] = (title, "FAIL", str(report.longrepr).splitlines()[-1][:120] if report.longrepr else "")
    elif report.when == "call" and number not in _results:
        _results[number] = (title, "PASS", getattr(item, "criterion_detail", ""))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        title, status, detail = _results[number]
        line = f"AC{number:<2} {status}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
