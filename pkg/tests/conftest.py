import numpy as np
import pytest


def random_rows(rng, m, n, w):
    """m x n 0/1 array, each row of weight <= w, mostly close to w."""
    cells = np.zeros((m, n), dtype=np.uint8)
    for i in range(m):
        k = int(rng.integers(max(0, w - 2), w + 1)) if rng.random() < 0.8 else int(rng.integers(0, w + 1))
        cells[i, rng.choice(n, size=k, replace=False)] = 1
    return cells


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
