import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from z2hodge import corpus  # noqa: E402


@pytest.fixture(scope="session")
def corpus_poly():
    """Session-memoized corpus polytopes so fans and face lattices are
    computed once per run."""
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = corpus.polytope(name)
        return cache[name]

    return get
