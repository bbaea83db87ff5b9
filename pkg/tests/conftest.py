from __future__ import annotations

import os
import sys

sys.path.insert(0, os.path.dirname(__file__))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        ok, elapsed, limit = results[number]
        terminalreporter.write_line(
            f"criterion {number}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s, bound {limit}s)")
