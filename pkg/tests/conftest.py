import pytest
from hypothesis import HealthCheck, settings

from pantoq import QContext

settings.register_profile(
    "pantoq", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("pantoq")


@pytest.fixture(params=[0.3, 0.5, 0.7])
def ctx(request):
    return QContext(request.param)


@pytest.fixture
def ctx5():
    return QContext(0.5)


# one PASS/FAIL line per acceptance criterion, shown after the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
