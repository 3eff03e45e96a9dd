import time

import hypothesis
import numpy as np
import pytest

from nondiophantine import arithmetic as ar

hypothesis.settings.register_profile("default", max_examples=200, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.load_profile("default")

CATALOG = [
    ar.identity(),
    ar.power(3),
    ar.fechner(10, -20),
    ar.tangent(1),
    ar.artanh(1),
]


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


@pytest.fixture(params=CATALOG, ids=str)
def ctx(request):
    return request.param


# acceptance criteria report: one PASS/FAIL line per marked test
RUNTIME_BUDGET = 60.0
_verdicts: dict[str, tuple[str, bool]] = {}
_started = time.perf_counter()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label, title): acceptance criterion reported in the summary")


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _verdicts[marker[0]] = (marker[1], report.outcome == "passed")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        outcome.get_result().criterion = mark.args


def _suite_within_budget(session) -> bool:
    return time.perf_counter() - _started < RUNTIME_BUDGET


def pytest_sessionfinish(session, exitstatus):
    if _verdicts and not _suite_within_budget(session) and exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    elapsed = time.perf_counter() - _started
    tr = terminalreporter
    tr.section("acceptance criteria")
    for label in sorted(_verdicts, key=lambda s: (int("".join(c for c in s if c.isdigit())), s)):
        title, ok = _verdicts[label]
        tr.write_line(f"{'PASS' if ok else 'FAIL'}  {label:<4} {title}")
    tr.write_line(f"{'PASS' if elapsed < RUNTIME_BUDGET else 'FAIL'}  11r  full suite runtime {elapsed:.1f} s < {RUNTIME_BUDGET:.0f} s")
