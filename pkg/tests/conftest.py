import pytest

RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[key])


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion, then assert it."""

    def report(num, title, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'}  [{num:>2}] {title}: {detail}"
        RESULTS[num] = line
        print(line)
        assert ok, line

    return report
