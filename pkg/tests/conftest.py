"""Shared fixtures and the per-criterion summary printed at the end of a run."""

from __future__ import annotations

import re
from collections import OrderedDict

import pytest

_CRITERIA: "OrderedDict[int, list[tuple[str, str]]]" = OrderedDict()
_NAME = re.compile(r"test_criterion_(\d+)")


def pytest_runtest_logreport(report):
    m = _NAME.search(report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        if hasattr(report, "wasxfail"):
            outcome = "xpass" if report.passed else "xfail"
        else:
            outcome = report.outcome
        _CRITERIA.setdefault(int(m.group(1)), []).append((report.nodeid.split("::")[-1], outcome))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        parts = _CRITERIA[num]
        bad = [name for name, out in parts if out != "passed"]
        verdict = "PASS" if not bad else "FAIL"
        line = f"criterion {num:2d}: {verdict}  ({len(parts) - len(bad)}/{len(parts)} parts)"
        if bad:
            line += "  failing: " + ", ".join(bad)
        tr.write_line(line)


@pytest.fixture(scope="session")
def corpus_dir():
    from freeext.cli import default_corpus

    return default_corpus()
