"""Shared test plumbing: the acceptance tests register one pass/fail line
per criterion here so the lines appear in the terminal summary even when
stdout capture swallows the in-test prints."""

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
