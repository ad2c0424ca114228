import math

import hypothesis
import numpy as np
import pytest
from hypothesis import strategies as st

from pqrswalk.coin import QubitState, WalkType, make_coin

hypothesis.settings.register_profile("default", max_examples=40, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=5, deadline=None)
hypothesis.settings.load_profile("default")

ACCEPTANCE_LINES = []

angles = st.floats(0, 2 * math.pi, allow_nan=False)


@st.composite
def coins(draw, lo=0.1, hi=0.9):
    A = draw(st.floats(lo, hi))
    s, t, u = draw(angles), draw(angles), draw(angles)
    a = math.sqrt(A) * complex(math.cos(s), math.sin(s))
    b = math.sqrt(1 - A) * complex(math.cos(t), math.sin(t))
    det = complex(math.cos(u), math.sin(u))
    return make_coin(a, b, -det * b.conjugate(), det * a.conjugate())


@st.composite
def states(draw):
    theta = draw(st.floats(0, math.pi / 2))
    phi = draw(angles)
    return QubitState(math.cos(theta), math.sin(theta) * complex(math.cos(phi), math.sin(phi)))


walk_types = st.sampled_from([WalkType.A, WalkType.G])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
