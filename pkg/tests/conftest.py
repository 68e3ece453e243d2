import re

_CRITERIA: dict[int, tuple[str, bool]] = {}
_PATTERN = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_runtest_logreport(report):
    match = _PATTERN.search(report.nodeid)
    if not match:
        return
    number, name = int(match.group(1)), match.group(2).replace("_", " ")
    # setup or call failure both count; teardown-only passes do not upgrade
    if report.when == "call" or report.failed:
        prior = _CRITERIA.get(number, (name, True))[1]
        _CRITERIA[number] = (name, prior and report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        name, ok = _CRITERIA[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number:2d}: {name}")
