"""Shared pytest plumbing: the acceptance scoreboard.

Acceptance tests call record() with their verdict before asserting, so
the final summary block lists every criterion's outcome even when a
criterion legitimately fails and pytest captures its stdout.
"""

ACCEPTANCE_LINES = []


def record(criterion: int, ok: bool, detail: str) -> None:
    verdict = "PASS" if ok else "FAIL"
    line = f"criterion {criterion}: {verdict} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
