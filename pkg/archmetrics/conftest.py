import os

# Must be set before anything imports archmetrics.settings. Lives inside the
# package so the zipapp built by shiv carries it along.
os.environ.setdefault("ARCHMETRICS_ENVIRONMENT", "testing")

import pytest  # noqa: E402

from archmetrics.zoo.manifest import load_manifest  # noqa: E402


@pytest.fixture(autouse=True)
def fresh_manifest() -> None:
    """Make every test read the embedded manifest from disk again."""
    load_manifest.cache_clear()
