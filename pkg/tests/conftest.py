import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from gaborlca.group_core import GroupSpec, Window

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SMALL_ORDERS = [(1,), (2,), (3,), (4,), (5,), (6,), (2, 2), (2, 3), (3, 2), (2, 4)]


@st.composite
def specs(draw, orders=SMALL_ORDERS):
    return GroupSpec(draw(st.sampled_from(orders)))


@st.composite
def windows(draw, spec):
    parts = st.floats(-3, 3, allow_nan=False, allow_infinity=False)
    re = draw(st.lists(parts, min_size=spec.order, max_size=spec.order))
    im = draw(st.lists(parts, min_size=spec.order, max_size=spec.order))
    return Window(spec, np.array(re) + 1j * np.array(im))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
