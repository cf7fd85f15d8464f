import numpy as np
import pytest

from dtwmean import Dataset, PointSequence


def seq(*values) -> PointSequence:
    """1-D point sequence from scalars, or d-dim from tuples."""
    return PointSequence([v if isinstance(v, (tuple, list)) else [v] for v in values])


def random_sequence(rng, max_len=5, dim=1, lo=0.0, hi=10.0, min_len=1) -> PointSequence:
    m = int(rng.integers(min_len, max_len + 1))
    return PointSequence(rng.uniform(lo, hi, size=(m, dim)))


def random_dataset(rng, n, max_len=4, dim=1, lo=0.0, hi=10.0, min_len=1) -> Dataset:
    return Dataset(
        [random_sequence(rng, max_len, dim, lo, hi, min_len) for _ in range(n)]
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
