import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import make_corpus  # noqa: E402


@pytest.fixture(scope="session")
def corpus():
    """Small random-instance corpus for unit-level differential tests; the
    acceptance suite builds its own 500-instance corpus."""
    return make_corpus(120, seed=1789)
