import random

import pytest

from charp.polyring import ring_new


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def ex53():
    """The ring F_2(v)[x, y] of the standard hypersurface example."""
    return ring_new(2, ["v"], ["x", "y"])


_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(id, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    ident, title = mark.args
    if call.when == "setup" or ident not in _ACCEPTANCE:
        _ACCEPTANCE[ident] = (title, True, 0.0)
    _, ok, spent = _ACCEPTANCE[ident]
    _ACCEPTANCE[ident] = (title, ok and call.excinfo is None, spent + call.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for ident in sorted(_ACCEPTANCE, key=lambda s: int(s[2:])):
        title, ok, spent = _ACCEPTANCE[ident]
        terminalreporter.write_line(f"{ident} {'PASS' if ok else 'FAIL'} ({spent:.2f}s) {title}")
