import contextlib
import os
import time

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


class _Check:
    detail = ""


@pytest.fixture
def criterion(request):
    """Time an acceptance criterion and record one PASS/FAIL line for it."""
    lines = request.config.stash.setdefault(_LINES, [])

    @contextlib.contextmanager
    def run(number, title, limit):
        check = _Check()
        start = time.perf_counter()
        status = "FAIL"
        try:
            yield check
            elapsed = time.perf_counter() - start
            if elapsed >= limit:
                check.detail = f"{check.detail}; over time limit".lstrip("; ")
            else:
                status = "PASS"
        finally:
            elapsed = time.perf_counter() - start
            line = f"{status} criterion {number}: {title} ({elapsed:.2f}s / limit {limit}s)"
            if check.detail:
                line += f" -- {check.detail}"
            lines.append(line)
            print(line)
        assert elapsed < limit, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"

    return run


_LINES = pytest.StashKey[list]()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
