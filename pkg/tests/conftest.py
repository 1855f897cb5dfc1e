import pytest


def pytest_configure(config):
    config._criterion_lines = []


@pytest.fixture
def criterion(request):
    """Record one acceptance-criterion line and assert it passed.

    The recorded lines are echoed in the terminal summary so the final
    pytest output carries one [PASS]/[FAIL] line per criterion even under
    output capture.
    """

    def _record(num, name, ok, detail, elapsed=None, limit=None):
        timed_out = limit is not None and elapsed is not None and elapsed >= limit
        status = "PASS" if (ok and not timed_out) else "FAIL"
        timing = ""
        if elapsed is not None:
            timing = f" [{elapsed:.2f}s" + (f", limit {limit:g}s" if limit else "") + "]"
        line = f"[{status}] criterion {num:2d}: {name} -- {detail}{timing}"
        request.config._criterion_lines.append(line)
        assert ok and not timed_out, line

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_criterion_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
