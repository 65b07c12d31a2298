import numpy as np
import pytest

from plpareto import MLRegion, Rewards, build_polygon


@pytest.fixture
def rw() -> Rewards:
    return Rewards(1.0 / 3.0, 1.0, 20.0)


@pytest.fixture
def sum_region() -> MLRegion:
    # {4 <= x <= 16, 4 <= y <= 16, 20 <= x + y <= 25}
    return build_polygon([(4, 16), (9, 16), (16, 9), (16, 4)])


@pytest.fixture
def diff_region() -> MLRegion:
    # {4 <= x <= 16, 4 <= y <= 16, 0 <= y - x <= 5}
    return build_polygon([(4, 4), (16, 16), (11, 16), (4, 9)])


def random_region(rng: np.random.Generator, lo: float = 0.0, hi: float = 30.0) -> MLRegion:
    n = int(rng.integers(5, 13))
    pts = rng.uniform(lo, hi, size=(n, 2))
    return build_polygon([tuple(p) for p in pts])
