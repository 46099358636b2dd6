import pytest

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call":
        return
    number, title = mark.args
    detail = ""
    if report.failed:
        detail = str(call.excinfo.value).splitlines()[0] if call.excinfo else ""
    _criteria[number] = (title, report.passed, report.duration, detail)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok, secs, detail = _criteria[number]
        line = f"{'PASS' if ok else 'FAIL'}  {number:>2}. {title} ({secs:.2f}s)"
        if detail:
            line += f" -- {detail}"
        tr.write_line(line)
    passed = sum(1 for v in _criteria.values() if v[1])
    tr.write_line(f"{passed}/{len(_criteria)} criteria pass")
