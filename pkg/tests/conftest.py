def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when != "call" or "test_acceptance" not in rep.nodeid:
                continue
            props = dict(rep.user_properties)
            if "criterion" in props:
                lines.append((props["criterion"], "PASS" if rep.passed else "FAIL", props.get("summary", "")))
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for n, verdict, summary in sorted(lines):
        terminalreporter.write_line(f"criterion {n:>2}: {verdict}  {summary}")
