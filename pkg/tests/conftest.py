import pytest

# (number, title, passed, detail) rows filled by test_acceptance.py
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, ok, detail in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {num:2d}. {title}: {detail}")


@pytest.fixture
def acceptance_line():
    def record(num, title, ok, detail):
        ACCEPTANCE_LINES.append((num, title, bool(ok), detail))
        print(f"[{'PASS' if ok else 'FAIL'}] {num:2d}. {title}: {detail}")
    return record
