import pytest

ACCEPTANCE = {}


@pytest.fixture
def criterion():
    """Record one acceptance verdict; the terminal summary prints them in order."""

    def record(number, title, ok, detail=""):
        ACCEPTANCE[number] = (title, bool(ok), detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[number]
        terminalreporter.line(f"[{'PASS' if ok else 'FAIL'}] {number:2d}. {title}: {detail}")
