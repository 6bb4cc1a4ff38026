import pytest

ACCEPTANCE: dict = {}


def record(number: int, title: str, passed: bool, seconds: float) -> None:
    ACCEPTANCE[number] = (title, passed, seconds)
    print(f"criterion {number} {'PASS' if passed else 'FAIL'}: {title} ({seconds:.2f} s)")


@pytest.fixture
def criterion():
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, passed, seconds = ACCEPTANCE[n]
        terminalreporter.write_line(
            f"criterion {n}: {'PASS' if passed else 'FAIL'}  {title}  [{seconds:.2f} s]")
