import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from asymcapm import AlignedPair, align, load_prices_csv  # noqa: E402

DATA = Path(__file__).resolve().parents[1] / "src" / "asymcapm" / "data"
ASSET_CSV = DATA / "synthetic_asset.csv"
MARKET_CSV = DATA / "synthetic_market.csv"
GOLDEN = Path(__file__).parent / "golden" / "fixture_report.json"

_acceptance: dict[int, tuple[str, str]] = {}


@pytest.fixture
def fixture_pair() -> AlignedPair:
    return align(load_prices_csv(ASSET_CSV), load_prices_csv(MARKET_CSV))


def pytest_runtest_logreport(report):
    marker = getattr(report, "acceptance", None)
    if marker is None:
        return
    num, title = marker
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        outcome = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        prev = _acceptance.get(num)
        if prev is None or prev[1] == "PASS":
            _acceptance[num] = (title, outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("acceptance")
    if m is not None:
        rep.acceptance = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_acceptance):
        title, outcome = _acceptance[num]
        terminalreporter.write_line(f"[{outcome}] criterion {num}: {title}")
    elapsed = getattr(terminalreporter.config, "_asymcapm_elapsed", None)
    if elapsed is not None:
        verdict = "PASS" if elapsed < 60 else "FAIL"
        terminalreporter.write_line(f"[{verdict}] criterion 8 (runtime): full run took {elapsed:.1f}s (limit 60s)")


_session_start = [0.0]


def pytest_sessionstart(session):
    import time
    _session_start[0] = time.perf_counter()


def pytest_sessionfinish(session, exitstatus):
    import time
    session.config._asymcapm_elapsed = time.perf_counter() - _session_start[0]
