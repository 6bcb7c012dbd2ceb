import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from heisorbit import scalars as sc

settings.register_profile("default", max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# small rationals keep exact arithmetic quick
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12).map(lambda q: sc.to_scalar(q))
nonzero_rationals = rationals.filter(lambda q: q != 0)


def rational_arrays(size):
    return st.lists(rationals, min_size=size, max_size=size).map(lambda xs: sc.as_array(xs, sc.EXACT))


@pytest.fixture
def rng():
    return np.random.default_rng(20240531)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
