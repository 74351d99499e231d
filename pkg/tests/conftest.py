from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from pseudospace import fixtures
from pseudospace.oracle import random_fragment

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def hexagon():
    return fixtures.hexagon()


@pytest.fixture
def f1():
    return fixtures.f1()


@st.composite
def fragments(draw, max_n: int = 3, max_steps: int = 16):
    n = draw(st.integers(1, max_n))
    steps = draw(st.integers(0, max_steps))
    seed = draw(st.integers(0, 10_000))
    return random_fragment(n, steps, seed)


@st.composite
def fragment_and_set(draw, max_n: int = 3, max_steps: int = 16, max_size: int = 3):
    g = draw(fragments(max_n, max_steps))
    X = draw(st.sets(st.integers(0, g.size - 1), max_size=max_size))
    return g, X


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
