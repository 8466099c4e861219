from __future__ import annotations

import random
import time

import pytest

from eventeval import _backend

ACCEPTANCE_LINES: list[str] = []

# wall-clock budget for the whole suite, checked at session end
SUITE_BUDGET_S = 60.0
_START = time.perf_counter()


def record(criterion: str, ok: bool, detail: str) -> None:
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


BACKENDS = [pytest.param(_backend.pure, id="python")]
if _backend.compiled is not None:
    BACKENDS.append(pytest.param(_backend.compiled, id="cython"))


@pytest.fixture(params=BACKENDS)
def kernels(request):
    return request.param


def random_instance(rng: random.Random, max_length=500, max_m=10, max_n=30):
    """Sorted distinct (length, events, detections) with m >= 1."""
    length = rng.randint(1, max_length)
    m = rng.randint(1, min(max_m, length))
    n = rng.randint(0, min(max_n, length))
    events = sorted(rng.sample(range(1, length + 1), m))
    dets = sorted(rng.sample(range(1, length + 1), n))
    return length, events, dets


def pytest_sessionfinish(session, exitstatus):
    if not ACCEPTANCE_LINES:
        return
    elapsed = time.perf_counter() - _START
    ok = elapsed < SUITE_BUDGET_S
    record("10b", ok, f"full suite wall time {elapsed:.1f} s (< {SUITE_BUDGET_S:.0f} s)")
    if not ok and session.exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
