"""Shared fixtures and the acceptance-summary reporting hook.

The builtin enumeration is cached per session because several test modules
sweep the same ranges; ``connected_upto`` hands out the cached classes.

Acceptance tests register one line per criterion through ``record_result``;
the lines are printed in a summary block at the end of the run so the
pass/fail status of every criterion is visible even when the tests pass.
"""

from __future__ import annotations

import functools

import pytest

from isolation_lab.enumeration import connected_graphs


@functools.lru_cache(maxsize=None)
def _classes(n: int):
    return tuple(connected_graphs(n))


@pytest.fixture(scope="session")
def connected_upto():
    """Callable (lo, hi) -> cached tuple of all builtin classes in range."""

    def run(lo: int, hi: int):
        out = []
        for n in range(lo, hi + 1):
            out.extend(_classes(n))
        return out

    return run


# ===== acceptance criterion reporting ========================================

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def record_result(criterion: str, ok: bool, detail: str) -> None:
    ACCEPTANCE_RESULTS.append((criterion, ok, detail))


def _criterion_key(label: str):
    digits = "".join(ch for ch in label if ch.isdigit())
    return (int(digits) if digits else 0, label)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for criterion, ok, detail in sorted(ACCEPTANCE_RESULTS,
                                        key=lambda r: _criterion_key(r[0])):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{status} criterion {criterion}: {detail}")
