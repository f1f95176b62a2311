import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("default")

# criterion number -> (status, detail), filled in by test_acceptance.py
ACCEPTANCE_LINES = {}


@pytest.fixture
def acceptance_line(capsys):
    def record(criterion, ok, detail="", status=None):
        status = status or ("PASS" if ok else "FAIL")
        ACCEPTANCE_LINES[criterion] = (status, detail)
        with capsys.disabled():
            print(f"\n[acceptance] criterion {criterion}: {status}" + (f" - {detail}" if detail else ""))
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=str):
        status, detail = ACCEPTANCE_LINES[key]
        terminalreporter.write_line(f"criterion {key}: {status}" + (f" - {detail}" if detail else ""))
