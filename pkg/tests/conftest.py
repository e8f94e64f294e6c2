"""Shared fixtures plus the acceptance-criteria summary hook."""

from __future__ import annotations

import pytest

from quivercells import catalog

# test_acceptance appends one line per criterion; printed after the test run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def a2():
    return catalog.a2tilde()


@pytest.fixture
def a2_alt():
    return catalog.a2tilde(second_ordering=True)


@pytest.fixture(params=[name for name, _ in catalog.suite()])
def suite_quiver(request):
    return dict(catalog.suite())[request.param]
