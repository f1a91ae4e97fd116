import pytest

from cogkit import fixtures


@pytest.fixture(scope="session")
def seg():
    return fixtures.seg_cog()


@pytest.fixture(scope="session")
def seg_witness(seg):
    return fixtures.seg_c6_witness(seg)


@pytest.fixture(scope="session")
def tri3():
    return fixtures.tri3_cog()


@pytest.fixture(scope="session")
def twist():
    return fixtures.twist_cog()


@pytest.fixture(scope="session")
def s3_adversarial():
    from cogkit.complexes import induce_from_action

    return induce_from_action(fixtures.s3_triangle_action(), "adversarial")[0]


_criteria = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::test_criterion[" in report.nodeid:
        n = int(report.nodeid.rsplit("[", 1)[1].rstrip("]"))
        detail = ""
        if report.failed:
            detail = str(report.longrepr.reprcrash.message).splitlines()[0] if hasattr(report.longrepr, "reprcrash") else "failed"
        _criteria[n] = (report.outcome, detail, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        outcome, detail, secs = _criteria[n]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        line = f"criterion {n:2d} {verdict}  {CRITERIA[n][0]} ({secs:.2f} s)"
        if detail:
            line += f": {detail}"
        terminalreporter.write_line(line)
