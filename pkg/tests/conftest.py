from __future__ import annotations

import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from oracles import brute_generic  # noqa: E402

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def int_vectors(min_n: int = 3, max_n: int = 8, hi: int = 60):
    return st.integers(min_n, max_n).flatmap(lambda n: st.lists(st.integers(1, hi), min_size=n, max_size=n))


def generic_vectors(min_n: int = 3, max_n: int = 8, hi: int = 60):
    return int_vectors(min_n, max_n, hi).filter(brute_generic)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter) -> None:
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
