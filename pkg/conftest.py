import sys
from pathlib import Path

import pytest

# tests import `tverberg_kit.*` the same way main.py does
_APP_DIR = Path(__file__).resolve().parent / "tverberg_app"
if str(_APP_DIR) not in sys.path:
    sys.path.insert(0, str(_APP_DIR))


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the seeded end-to-end sweeps")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: seeded sweeps and full reductions (needs --runslow)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)
