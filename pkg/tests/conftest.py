import functools

import pytest

from robinwall import build_state


@functools.lru_cache(maxsize=None)
def cached_state(bc, n, field):
    return build_state(bc, n, field)


@pytest.fixture(scope="session")
def state_of():
    """Memoized state factory; momentum tables are expensive to rebuild."""
    return cached_state
