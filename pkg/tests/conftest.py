from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "stperm",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("stperm")


@pytest.fixture
def F2():
    from stperm.gf import PrimeField

    return PrimeField(2)


@pytest.fixture
def F3():
    from stperm.gf import PrimeField

    return PrimeField(3)


_ACCEPTANCE: dict[int, tuple[str, str]] = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of an acceptance criterion; ``criterion(n, text)`` labels it."""
    label: dict = {}

    def mark(n: int, text: str) -> None:
        label["n"], label["text"] = n, text

    yield mark
    rep = getattr(request.node, "rep_call", None)
    if "n" in label:
        ok = rep is not None and rep.passed
        line = f"criterion {label['n']}: {'PASS' if ok else 'FAIL'} - {label['text']}"
        _ACCEPTANCE[label["n"]] = ("PASS" if ok else "FAIL", line)
        print(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_ACCEPTANCE[n][1])
