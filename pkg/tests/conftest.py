"""Shared brute-force oracles for the test suite."""
from __future__ import annotations

import itertools

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")


def fib(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def words_avoiding(n: int, forbidden: list[str], alphabet: str = "01") -> list[str]:
    """Words of length n with no factor in ``forbidden``."""
    out = []
    for t in itertools.product(alphabet, repeat=n):
        w = "".join(t)
        if not any(f in w for f in forbidden):
            out.append(w)
    return out


def apply_table(table: dict, offsets: list[int], word: str) -> str:
    """Slide a 1-D rule over ``word``; offsets relative to the output cell."""
    lo, hi = min(0, *offsets), max(0, *offsets)
    out = []
    for i in range(-lo, len(word) - hi):
        out.append(table["".join(word[i + o] for o in offsets)])
    return "".join(out)


@pytest.fixture
def Z():
    from shiftlab.cellspace import get_space

    return get_space("Z")


ACCEPTANCE_LINES: list[str] = []


def report(number: int, passed: bool, detail: str) -> None:
    """Record one PASS/FAIL line for the acceptance summary."""
    line = f"CRITERION {number}: {'PASS' if passed else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
