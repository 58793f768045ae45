from __future__ import annotations

from collections import OrderedDict

import pytest

_RESULTS: "OrderedDict[int, dict]" = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k, title): acceptance criterion k")


def pytest_collection_modifyitems(config, items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            k, title = mark.args
            _RESULTS.setdefault(k, {"title": title, "passed": 0, "failed": 0, "tests": []})
            _RESULTS[k]["tests"].append(item.nodeid)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    entry = _RESULTS[mark.args[0]]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        if report.passed:
            entry["passed"] += 1
        elif report.failed or report.skipped:
            entry["failed"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(_RESULTS):
        e = _RESULTS[k]
        ran = e["passed"] + e["failed"]
        ok = e["failed"] == 0 and ran == len(e["tests"])
        status = "PASS" if ok else "FAIL"
        tr.write_line(f"[{status}] criterion {k:2d}: {e['title']} ({e['passed']}/{len(e['tests'])} checks)")
