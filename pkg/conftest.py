"""Shared pytest configuration: project root on sys.path and the slow marker."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: levels n = 9, 10 (minutes); deselect with -m 'not slow'")
