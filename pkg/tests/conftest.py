from hypothesis import settings

settings.register_profile("catprob", deadline=None, derandomize=True)
settings.load_profile("catprob")


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion."""
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", ()))
            if "criterion" in props and rep.when == "call":
                bound = props["bound"]
                rows.append((int(props["criterion"]), rep.passed and rep.duration < bound, rep.duration, bound))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for crit, ok, elapsed, bound in sorted(rows):
        terminalreporter.write_line(f"AC{crit:02d} {'PASS' if ok else 'FAIL'} {elapsed:.2f}s (bound {bound}s)")
