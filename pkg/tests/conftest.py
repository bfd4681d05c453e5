import re

import pytest
from hypothesis import HealthCheck, settings

from burau_orbits.edge_spaces import build_C, build_P
from burau_orbits.finite_module import FiniteModule
from burau_orbits.finite_ring import Ring
from burau_orbits.tables import build_input
from helpers import suite_texts

settings.register_profile(
    "repo", derandomize=True, deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def suite_rings():
    out = []
    for text in suite_texts():
        obj = build_input(text)
        if not isinstance(obj, FiniteModule):
            R = Ring(obj)
            out.append((text, R, build_P(R)))
    return out


@pytest.fixture(scope="session")
def suite_wheels():
    out = []
    for text in suite_texts():
        obj = build_input(text)
        if isinstance(obj, FiniteModule) and obj.residue_rank == 2:
            out.append((text, obj, build_C(obj)))
    return out


# -- one summary line per acceptance criterion ------------------------------------------------

_CRIT = re.compile(r"test_criterion_(\d+)")
_results = {}


def pytest_runtest_logreport(report):
    if "test_acceptance" not in report.nodeid:
        return
    m = _CRIT.search(report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    failed = report.failed or (report.when == "call" and report.outcome != "passed")
    entry = _results.setdefault(n, {"ok": True, "failed": []})
    if failed:
        entry["ok"] = False
        entry["failed"].append(report.nodeid.split("::")[-1])


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        e = _results[n]
        tail = "" if e["ok"] else "  (" + ", ".join(e["failed"]) + ")"
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if e['ok'] else 'FAIL'}{tail}")
