import pytest

_LINES = []


class _Recorder:
    def __init__(self, label):
        self.label = label

    def __call__(self, ok, detail=""):
        _LINES.append((self.label, bool(ok), detail))
        return ok


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion.

    The label is taken from the ``acceptance`` marker of the test.
    """
    mark = request.node.get_closest_marker("acceptance")
    return _Recorder(mark.args[0] if mark else request.node.name)


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): acceptance criterion with a summary line")


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in sorted(_LINES, key=lambda t: int(t[0].split()[0])):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
