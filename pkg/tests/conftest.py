"""Shared test plumbing: acceptance-criterion result reporting."""
import pytest

_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def acceptance_log():
    """Record a criterion verdict; printed in the terminal summary."""

    def record(criterion: int, passed: bool, detail: str) -> None:
        _ACCEPTANCE[criterion] = (passed, detail)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_ACCEPTANCE):
        passed, detail = _ACCEPTANCE[crit]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {crit:2d}: {status} — {detail}")
