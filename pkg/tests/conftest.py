import re

import pytest

from actlab.monoid import l3, m3, sl2, trivial_monoid, z2

_CRITERIA = {}


@pytest.fixture
def SL2():
    return sl2()


@pytest.fixture
def Z2():
    return z2()


@pytest.fixture
def L3():
    return l3()


@pytest.fixture
def M3():
    return m3()


@pytest.fixture
def T1():
    return trivial_monoid()


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = int(m.group(1))
    failed = report.failed
    if report.when == "call" or failed:
        prev = _CRITERIA.get(key, (m.group(2), True, 0.0))
        _CRITERIA[key] = (m.group(2), prev[1] and not failed, prev[2] + report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA):
        name, ok, secs = _CRITERIA[key]
        terminalreporter.write_line(f"criterion {key:>2} {'PASS' if ok else 'FAIL'}  {name}  ({secs:.1f}s)")
