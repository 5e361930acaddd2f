import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest

from tritile.constructions import random_with_codegree


def seeded_corpus(count, *, k=3, sizes=(6, 7, 8, 9, 10, 11, 12), max_delta=4, base_seed=0):
    """Deterministic stream of (seed, graph) pairs for corpus-style tests."""
    out = []
    for i in range(count):
        seed = base_seed + i
        n = sizes[i % len(sizes)]
        delta = (i * 7 + 3) % (max_delta + 1)
        delta = min(delta, n - k + 1)
        out.append((seed, random_with_codegree(n, k, delta, seed=seed)))
    return out


@pytest.fixture(scope="session")
def small_corpus():
    return seeded_corpus(60)
