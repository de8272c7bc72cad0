"""Shared fixtures and the acceptance summary printer."""

ACCEPTANCE_LINES = []


def record_criterion(tag: str, passed: bool, detail: str) -> None:
    """Queue one pass/fail line for the end-of-run summary."""
    status = "PASS" if passed else "FAIL"
    ACCEPTANCE_LINES.append(f"[{status}] {tag}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
