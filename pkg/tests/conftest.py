"""Shared test plumbing: the acceptance scoreboard.

Acceptance tests record one verdict line each; the lines are replayed in
the terminal summary so they survive pytest's output capture.
"""

ACCEPTANCE_LINES = []


def record_verdict(line):
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
