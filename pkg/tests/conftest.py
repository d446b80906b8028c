import os
import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("islab", max_examples=60, deadline=None)
settings.load_profile("islab")


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("ISLAB_CACHE_DIR", str(tmp_path / "cache"))
    yield


ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the outcome is filled in after the test body runs."""
    entry = {"label": request.node.function.__doc__.strip().splitlines()[0], "detail": ""}
    yield entry
    ACCEPTANCE.append((entry["label"], entry.get("ok", False), entry["detail"]))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}{'  (' + detail + ')' if detail else ''}")
