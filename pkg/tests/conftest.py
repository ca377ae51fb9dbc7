"""Shared test plumbing.

The acceptance tests record one human-readable pass/fail line per
criterion; the terminal-summary hook below re-emits them at the end of
the run so they are visible without -s.
"""

ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    ACCEPTANCE_LINES.append(line)
    print(line, flush=True)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
