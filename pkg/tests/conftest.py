from __future__ import annotations

from fdecomp.ffunc import FRule, base_rule, bbin_rule

# filled by tests/test_acceptance.py, printed at the end of the run
ACCEPTANCE_LINES: dict[str, str] = {}

CORE_RULES = {
    "constant1": FRule.constant(1),
    "base5": base_rule(5),
    "factorial": FRule.factorial_bins(),
    "bbin3": bbin_rule(3),
}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: (int(k.split(".")[0]), k)):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
