"""Collects acceptance outcomes per criterion and prints one line each."""

from collections import defaultdict

_outcomes: dict[tuple, list[tuple[str, str]]] = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion the test belongs to")


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker is not None:
            item.user_properties.append(("criterion", marker.args))


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or report.failed:
        _outcomes[crit].append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for (number, title), results in sorted(_outcomes.items()):
        failed = [name for name, outcome in results if outcome != "passed"]
        status = "PASS" if not failed else "FAIL"
        line = f"criterion {number} [{status}] {title} ({len(results) - len(failed)}/{len(results)} checks)"
        if failed:
            line += "; failing: " + ", ".join(failed)
        tr.write_line(line)
