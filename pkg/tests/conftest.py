import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("exact", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("exact")

CRITERIA = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line: call with the criterion number and a short label."""
    state = {}

    def record(number, label):
        state["key"] = (number, label)

    yield record
    if "key" in state:
        rep = getattr(request.node, "rep_call", None)
        CRITERIA[state["key"]] = rep is not None and rep.passed


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (number, label), ok in sorted(CRITERIA.items()):
        terminalreporter.write_line(f"criterion {number:>2} {'PASS' if ok else 'FAIL'}: {label}")


@pytest.fixture(scope="session")
def e4_dense_dims():
    """Dense-oracle dimensions for E4 at kappa 1; degree 2 takes about a minute."""
    from oracles import DenseComplex
    from hlts.samples import e4_operator

    oracle = DenseComplex(e4_operator(1))
    return {1: oracle.dims(1), 2: oracle.dims(2)}
