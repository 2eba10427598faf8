import pytest

from flexigraph import graphs, nilq


@pytest.fixture(scope="session")
def machine2():
    return nilq.build_machine(2)


@pytest.fixture(scope="session")
def machine3():
    return nilq.build_machine(3)


@pytest.fixture(scope="session")
def build2():
    return graphs.certify_flexible(2)


@pytest.fixture(scope="session")
def build3():
    return graphs.certify_flexible(3)


@pytest.fixture(scope="session")
def acceptance_log(request):
    """criterion id -> list of (ok, detail); printed at the end of the run."""
    log = getattr(request.config, "_acceptance_log", None)
    if log is None:
        log = request.config._acceptance_log = {}
    return log


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = getattr(config, "_acceptance_log", None)
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(log, key=lambda c: int(c)):
        parts = log[cid]
        ok = all(p for p, _ in parts)
        detail = "; ".join(d for _, d in parts)
        terminalreporter.write_line(f"criterion {cid}: {'PASS' if ok else 'FAIL'}  {detail}")
