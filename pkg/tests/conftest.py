from __future__ import annotations

import pytest

from transcenter import Config, Language, TranslationCenter
from transcenter.config import SPANISH_PALETTE


def make_config(**overrides) -> Config:
    config = Config(
        languages={
            "es": Language("es", "Spanish", list(SPANISH_PALETTE)),
            "fr": Language("fr", "French", []),
        }
    )
    for key, value in overrides.items():
        setattr(config, key, value)
    return config


@pytest.fixture
def center() -> TranslationCenter:
    return TranslationCenter(make_config())


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One [PASS]/[FAIL] line per acceptance test, with its runtime."""
    rows = []
    for outcome in ("passed", "failed"):
        for report in terminalreporter.stats.get(outcome, []):
            if getattr(report, "when", None) != "call":
                continue
            if "test_acceptance.py" not in report.nodeid:
                continue
            rows.append((report.nodeid.split("::")[-1], outcome, report.duration))
    if not rows:
        return
    terminalreporter.write_sep("-", "acceptance checks")
    for name, outcome, duration in rows:
        tag = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{tag}] {name} ({duration:.2f}s)")
