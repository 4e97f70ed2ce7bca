import pytest

# criterion number -> (title, passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict = {}


@pytest.fixture
def record():
    def _record(number: int, title: str, passed: bool, detail: str = ""):
        ACCEPTANCE[number] = (title, bool(passed), detail)

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[k]
        line = f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
