"""Shared pytest plumbing: the acceptance-criterion outcome report."""

ACCEPTANCE_RESULTS: list[tuple[str, bool]] = []


def record_criterion(cid: str, ok: bool) -> None:
    ACCEPTANCE_RESULTS.append((cid, ok))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for cid, ok in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"ACCEPTANCE {cid}: {'PASS' if ok else 'FAIL'}")
