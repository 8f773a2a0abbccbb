"""Per-criterion PASS/FAIL summary for the acceptance suite."""
from collections import OrderedDict

import pytest

_RESULTS = OrderedDict()


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    entry = _RESULTS.setdefault(number, {"title": title, "ok": True, "seen": False, "notes": []})
    if call.when == "call" or call.excinfo is not None:
        entry["seen"] = True
        if call.excinfo is not None and not call.excinfo.errisinstance(pytest.skip.Exception):
            entry["ok"] = False
            entry["notes"].append(f"{item.name}: {call.excinfo.typename}")
    if call.when == "call":
        for key, value in item.user_properties:
            if key == "detail":
                entry["notes"].append(value)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        entry = _RESULTS[number]
        tag = "PASS" if entry["ok"] and entry["seen"] else "FAIL"
        detail = "; ".join(entry["notes"])
        terminalreporter.write_line(f"criterion {number} {tag}: {entry['title']}" + (f" ({detail})" if detail else ""))
