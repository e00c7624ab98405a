from __future__ import annotations

import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        ok, title, detail = results[k]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {k:>2}. {title}{': ' + detail if detail else ''}")
