from importlib import resources
from pathlib import Path

import numpy as np
import pytest

ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when != "call":
        return
    num, title = marker.args
    ACCEPTANCE.append((num, title, item.name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    by_num = {}
    for num, title, name, outcome in ACCEPTANCE:
        ok, t, names = by_num.get(num, (True, title, []))
        by_num[num] = (ok and outcome == "passed", t, names + [name])
    for num in sorted(by_num):
        ok, title, _ = by_num[num]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {title}")


SAMPLES = Path(str(resources.files("oilfusion") / "samples"))


@pytest.fixture
def samples():
    return SAMPLES


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
