import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import connected_interval_graphs, random_corpus  # noqa: E402


@pytest.fixture(scope="session")
def corpus8():
    """Every connected interval graph with at most 8 vertices, up to iso."""
    return connected_interval_graphs(8)


@pytest.fixture(scope="session")
def random12():
    """500 seeded random interval graphs with at most 12 vertices."""
    return random_corpus(500, 12, seed=20240229)
