import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dsombor.generate import enumerate_up_to  # noqa: E402


@functools.lru_cache(maxsize=None)
def corpus(n_max, connected=False):
    return tuple(enumerate_up_to(n_max, connected))


@pytest.fixture(scope="session")
def graphs_upto6():
    return corpus(6)


@pytest.fixture(scope="session")
def graphs_upto7():
    return corpus(7)


_criteria: dict[int, list[tuple[str, str]]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    number = getattr(report, "criterion", None)
    if number is None:
        return
    _criteria.setdefault(number, []).append((report.nodeid, report.outcome))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        results = _criteria[number]
        failed = [nodeid.split("::")[-1] for nodeid, outcome in results if outcome != "passed"]
        status = "PASS" if not failed else "FAIL"
        detail = f" ({len(results)} checks)" if not failed else f" failing: {', '.join(failed)}"
        terminalreporter.write_line(f"criterion {number}: {status}{detail}")
