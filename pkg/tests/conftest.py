import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from pucci_halfspace.matrix import Ellipticity

settings.register_profile("repo", deadline=None, derandomize=True, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def ell_of(omega, n, lam=1.0):
    return Ellipticity.from_ratio(omega, n, lam)


def unit(rng, n):
    v = rng.standard_normal(n)
    return v / np.linalg.norm(v)


# -- acceptance report --------------------------------------------------------------

SUITE_LIMIT_S = 300.0
ACCEPTANCE = []


def record(number, passed, detail):
    """One line per acceptance criterion, printed again in the terminal summary."""
    line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE.append(line)
    print(line)
    return passed


def pytest_sessionstart(session):
    import time
    session.config._suite_start = time.perf_counter()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    import time
    elapsed = time.perf_counter() - config._suite_start
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE:
        terminalreporter.write_line(line)
    ok = elapsed < SUITE_LIMIT_S
    terminalreporter.write_line(
        f"criterion 12: {'PASS' if ok else 'FAIL'}  full suite wall clock {elapsed:.1f} s "
        f"(limit {SUITE_LIMIT_S:.0f} s); determinism checked in test_criterion_12")


def pytest_sessionfinish(session, exitstatus):
    import time
    if ACCEPTANCE and time.perf_counter() - session.config._suite_start >= SUITE_LIMIT_S:
        session.exitstatus = 1
