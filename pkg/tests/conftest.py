import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from corpus import CORPUS  # noqa: E402

_LINES = {}


@pytest.fixture
def report():
    """Record one pass/fail line for an acceptance criterion and print it."""

    def _report(number, ok, detail):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        _LINES[number] = line
        print(line)
        return ok

    return _report


_SUPERFICIAL = {}


@pytest.fixture(scope="session")
def superficial():
    """Superficial element per corpus member, found once per session."""
    from rrcas.local import find_superficial

    def get(name):
        if name not in _SUPERFICIAL:
            member = next(m for m in CORPUS if m.name == name)
            pres, I = member.build()
            x, _ = find_superficial(pres, I, n_check=9, n_max=9)
            _SUPERFICIAL[name] = (pres, I, x)
        return _SUPERFICIAL[name]

    return get


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_LINES):
        terminalreporter.write_line(_LINES[n])
