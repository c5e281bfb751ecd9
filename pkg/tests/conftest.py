from __future__ import annotations

import helpers


def pytest_terminal_summary(terminalreporter, exitstatus, config) -> None:
    if not helpers.ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(helpers.ACCEPTANCE_LOG):
        terminalreporter.write_line(line)
