import pytest

# criterion id -> (passed, summary); filled by test_acceptance.py
ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    crit = item.get_closest_marker("criterion")
    if crit is None or report.when != "call":
        return
    cid, title = crit.args
    ACCEPTANCE_RESULTS[cid] = (report.passed, title)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(ACCEPTANCE_RESULTS, key=int):
        passed, title = ACCEPTANCE_RESULTS[cid]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {cid}: {title}")
