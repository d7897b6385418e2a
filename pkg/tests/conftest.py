import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from hookharm import cache  # noqa: E402

EXTENDED = os.environ.get("HOOKHARM_EXTENDED") == "1"
SEED = int(os.environ.get("HOOKHARM_SEED", "20240601"))

# criterion number -> list of (label, ok) filled in by test_acceptance
ACCEPTANCE = {}


def pytest_collection_modifyitems(config, items):
    if EXTENDED:
        return
    skip = pytest.mark.skip(reason="extended run (set HOOKHARM_EXTENDED=1)")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session", autouse=True)
def _disk_cache(tmp_path_factory):
    # reuse between tests of one session; an explicit HOOKHARM_CACHE wins
    if not os.environ.get(cache.ENV_VAR):
        cache.set_cache_dir(tmp_path_factory.mktemp("hookharm-cache"))
    yield


@pytest.fixture
def rng():
    return random.Random(SEED)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        for label, status in ACCEPTANCE[num]:
            terminalreporter.write_line(f"criterion {num}: {status:<7} {label}")
