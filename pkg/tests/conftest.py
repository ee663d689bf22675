from collections import defaultdict
from pathlib import Path

import pytest

from ckmetrics.parser import build_class_model, find_sources, parse_files, read_module_map
from ckmetrics.reference import fixture_path, table4_defects, table4_metrics

_criteria = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for n in getattr(report, "_criteria", ()):
        _criteria[n].append((report.nodeid, report.outcome))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    rep._criteria = tuple(m.args[0] for m in item.iter_markers("criterion"))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_criteria):
        results = _criteria[n]
        failed = [nid for nid, o in results if o != "passed"]
        status = "PASS" if not failed else "FAIL"
        tr.write_line(f"criterion {n}: {status} ({len(results) - len(failed)}/{len(results)} checks)")
        for nid in failed:
            tr.write_line(f"    failed: {nid}")


@pytest.fixture(scope="session")
def t4_metrics():
    return table4_metrics()


@pytest.fixture(scope="session")
def t4_defects():
    return table4_defects()


@pytest.fixture(scope="session")
def toy_dir() -> Path:
    return fixture_path("toy_src")


@pytest.fixture(scope="session")
def toy_model(toy_dir):
    paths = find_sources(toy_dir)
    units = parse_files(paths, root=toy_dir)
    return build_class_model(units, read_module_map(fixture_path("toy_modules.csv")))
