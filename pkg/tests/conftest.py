import pytest


def pytest_configure(config):
    config._acceptance_lines = []


@pytest.fixture
def acceptance(request):
    """Callable recording one status line per acceptance criterion."""
    lines = request.config._acceptance_lines

    def record(n, ok, detail, seconds):
        line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  ({seconds:.1f} s)  {detail}"
        lines.append((n, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "_acceptance_lines", [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(lines):
        terminalreporter.write_line(line)
