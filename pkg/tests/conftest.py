import os
import sys
import tempfile

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "wittlab", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("wittlab")


@pytest.fixture(autouse=True, scope="session")
def _private_table_cache():
    """Keep the table cache out of the user's home directory during tests."""
    with tempfile.TemporaryDirectory() as d:
        old = os.environ.get("WITTLAB_CACHE_DIR")
        os.environ["WITTLAB_CACHE_DIR"] = d
        yield d
        if old is None:
            os.environ.pop("WITTLAB_CACHE_DIR", None)
        else:
            os.environ["WITTLAB_CACHE_DIR"] = old


def pytest_terminal_summary(terminalreporter):
    lines = []
    for name, module in list(sys.modules.items()):
        if name.endswith("test_acceptance"):
            lines = getattr(module, "SUMMARY", []) or lines
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
