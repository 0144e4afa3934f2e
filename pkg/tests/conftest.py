import pytest

# criterion number -> (passed, elapsed seconds, limit seconds, note)
ACCEPTANCE_RESULTS: dict[int, tuple] = {}


@pytest.fixture
def record_criterion():
    def record(number, passed, elapsed, limit, note=""):
        ACCEPTANCE_RESULTS[number] = (passed, elapsed, limit, note)
        status = "PASS" if passed and elapsed < limit else "FAIL"
        print(f"CRITERION {number}: {status} ({elapsed:.2f}s, limit {limit}s) {note}".rstrip())
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        passed, elapsed, limit, note = ACCEPTANCE_RESULTS[number]
        status = "PASS" if passed and elapsed < limit else "FAIL"
        line = f"CRITERION {number}: {status} ({elapsed:.2f}s, limit {limit}s)"
        terminalreporter.write_line(f"{line} {note}".rstrip())
