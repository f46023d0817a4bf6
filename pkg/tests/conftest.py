"""Acceptance bookkeeping.

Tests tagged ``@pytest.mark.acceptance(number, title, seconds)`` are grouped
by criterion number. A criterion passes when every test tagged with it passes
and their combined wall time stays within ``seconds``; the terminal summary
prints one PASS/FAIL line per criterion and an overrun fails the session.
"""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(number, title, seconds): acceptance criterion with a time limit")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    number, title, seconds = mark.args
    entry = _criteria.setdefault(number, {"title": title, "limit": seconds, "time": 0.0,
                                          "ok": True, "failures": []})
    if report.when == "call":
        entry["time"] += call.duration
        if call.duration > seconds:
            report.outcome = "failed"
            report.longrepr = (f"criterion {number} took {call.duration:.1f}s, "
                               f"limit is {seconds}s")
    if report.failed or (report.when == "setup" and report.skipped):
        entry["ok"] = False
        entry["failures"].append(item.name)


def _verdicts():
    for number in sorted(_criteria):
        e = _criteria[number]
        ok = e["ok"] and e["time"] <= e["limit"]
        yield number, e, ok


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number, e, ok in _verdicts():
        line = (f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {e['title']} "
                f"({e['time']:.1f}s of {e['limit']}s)")
        if e["failures"]:
            line += f"  failing: {', '.join(e['failures'])}"
        tr.write_line(line, green=ok, red=not ok)


def pytest_sessionfinish(session, exitstatus):
    if exitstatus == 0 and any(not ok for _, _, ok in _verdicts()):
        session.exitstatus = 1
