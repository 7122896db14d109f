import time
from contextlib import contextmanager

ACCEPTANCE = []


@contextmanager
def criterion(num, cap_seconds, desc):
    """Record one acceptance criterion outcome for the terminal summary.

    The body holds the criterion's asserts; the elapsed time is checked
    against the stated runtime cap after the body passes.
    """
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - t0
        within = elapsed < cap_seconds
        ACCEPTANCE.append((num, ok and within,
                           f"{desc} [{elapsed:.1f}s / cap {cap_seconds:.0f}s]"))
    assert elapsed < cap_seconds, f"criterion {num} exceeded its runtime cap"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for num, ok, desc in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {num:2d}  {'PASS' if ok else 'FAIL'}  {desc}")
