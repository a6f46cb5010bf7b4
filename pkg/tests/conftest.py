import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call" and item.path.name == "test_acceptance.py":
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        ACCEPTANCE_LINES.append(f"{'PASS' if report.passed else 'FAIL'}  {doc}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
