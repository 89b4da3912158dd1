import os
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): an acceptance criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            number, title = mark.args
            _CRITERIA.setdefault(number, {"title": title, "items": {}})["items"][item.nodeid] = None


def pytest_runtest_logreport(report):
    for entry in _CRITERIA.values():
        if report.nodeid not in entry["items"]:
            continue
        prev = entry["items"][report.nodeid]
        if report.failed:
            entry["items"][report.nodeid] = ("failed", report.duration)
        elif report.when == "call" and prev is None:
            entry["items"][report.nodeid] = ("passed" if report.passed else "skipped",
                                             report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entry = _CRITERIA[number]
        results = [r for r in entry["items"].values() if r is not None]
        if not results:
            verdict = "NOT RUN"
        else:
            verdict = "PASS" if all(r[0] == "passed" for r in results) else "FAIL"
            if verdict == "PASS" and len(results) < len(entry["items"]):
                verdict = "PASS (partial run)"
        secs = sum(r[1] for r in results)
        terminalreporter.write_line(
            f"criterion {number}: {verdict}  {entry['title']}  ({secs:.1f} s)")


@pytest.fixture
def stopwatch():
    start = time.perf_counter()
    return lambda: time.perf_counter() - start
