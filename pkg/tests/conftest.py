import pytest

from moduli_count.gf import SUPPORTED_Q, supported_field


@pytest.fixture(params=SUPPORTED_Q, ids=lambda q: f"q{q}")
def field(request):
    return supported_field(request.param)


_CRITERIA = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = "test_acceptance.py::test_criterion_"
    if marker in report.nodeid:
        name = report.nodeid.split(marker, 1)[1]
        _CRITERIA[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda n: int(n.split("_", 1)[0])):
        num, label = name.split("_", 1)
        terminalreporter.write_line(f"criterion {num} {label.replace('_', ' ')}: {_CRITERIA[name]}")
