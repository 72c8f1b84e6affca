import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=100,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=1000,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_VERDICTS: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance verdict line, then assert it."""

    def record(name: str, ok: bool, detail: str) -> None:
        _VERDICTS[name] = (bool(ok), detail)
        print(f"{name}: {'PASS' if ok else 'FAIL'} - {detail}")
        assert ok, f"{name} failed: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_VERDICTS):
        ok, detail = _VERDICTS[name]
        terminalreporter.write_line(f"{name}: {'PASS' if ok else 'FAIL'} - {detail}")
