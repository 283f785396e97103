import pytest

from hilbert_systole.number_field import preset

_ACCEPTANCE = {}


@pytest.fixture(scope="session")
def qsqrt5():
    return preset("q-sqrt5")


@pytest.fixture(scope="session")
def rationals():
    return preset("rationals")


@pytest.fixture(scope="session")
def cubic():
    return preset("cubic-7")


@pytest.fixture(scope="session", params=["rationals", "q-sqrt2", "q-sqrt3", "q-sqrt5", "cubic-7"])
def any_field(request):
    return preset(request.param)


@pytest.fixture
def acceptance_log(request):
    """Record one pass/fail line per acceptance criterion."""
    name = request.node.name

    def record(ok, detail):
        _ACCEPTANCE[name] = ("PASS" if ok else "FAIL", detail)
        return ok

    _ACCEPTANCE[name] = ("FAIL", "did not complete")
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        status, detail = _ACCEPTANCE[name]
        terminalreporter.write_line("%s %s: %s" % (status, name, detail))
