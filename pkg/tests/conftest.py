import os

import pytest
from hypothesis import settings

from vdbkit import kernel
from vdbkit.extremal import construct_minimizer
from vdbkit.graph import from_edge_list

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")

BACKENDS = sorted(kernel.KERNELS)


def pytest_collection_modifyitems(config, items):
    if os.environ.get("VDBKIT_EXTENDED") == "1":
        return
    skip = pytest.mark.skip(reason="extended run; set VDBKIT_EXTENDED=1")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def c4():
    return from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def k4():
    return from_edge_list(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])


@pytest.fixture
def minimizer_10_3():
    return construct_minimizer(10, 3)


_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def acceptance(request):
    """record(label, ok, detail): one PASS/FAIL line per acceptance criterion."""
    lines = request.config.stash.setdefault(_ACCEPTANCE_KEY, [])

    def record(label, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {label}: {detail}"
        lines.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
