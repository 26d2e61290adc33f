from __future__ import annotations

import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import random_demand_graph  # noqa: E402


@pytest.fixture(scope="session")
def corpus():
    """Mixed bag of small-to-medium connected demand graphs."""
    rng = random.Random(0xDA0)
    graphs = []
    for _ in range(30):
        n = rng.randint(4, 120)
        extra = rng.randint(0, 2 * n)
        graphs.append(random_demand_graph(rng, n, extra))
    return graphs


@pytest.fixture(scope="session")
def small_corpus():
    """Tiny connected demand graphs (n <= 10) for exhaustive-style checks."""
    rng = random.Random(0xDA1)
    graphs = []
    for _ in range(25):
        n = rng.randint(2, 10)
        extra = rng.randint(0, n)
        graphs.append(random_demand_graph(rng, n, extra))
    return graphs
