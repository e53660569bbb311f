import sys
import warnings

import pytest
from hypothesis import HealthCheck, settings

from gds.alcove import EllContext
from gds.core_lie import root_system

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def make_ctx(label, ell, case="modular"):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return EllContext(root_system(label), ell, case)


@pytest.fixture
def a1():
    return make_ctx("A1", 5)


@pytest.fixture
def a1q():
    return make_ctx("A1", 5, "quantum")


@pytest.fixture
def a2():
    return make_ctx("A2", 5)


@pytest.fixture
def a2q():
    return make_ctx("A2", 5, "quantum")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "REPORT", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
