"""Print one PASS/FAIL line per acceptance criterion after the test run."""

_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py::" not in report.nodeid:
        return
    detail = dict(report.user_properties).get("acceptance", "")
    _ACCEPTANCE.append((report.nodeid.split("[")[-1].rstrip("]"), report.outcome, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, detail in sorted(_ACCEPTANCE):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{name} {status}  {detail}")
