import numpy as np
import pytest

import formetric as fm


@pytest.fixture
def rng():
    return np.random.default_rng(0)


def random_metric(rng, n, dim=3):
    """Valid finite metric from random Euclidean points."""
    pts = rng.normal(size=(n, dim))
    return np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)


def random_action(space, n, rng):
    g = fm.sample(space, int(rng.integers(0, 2**31)), "group")
    return fm.LabeledAction(g, rng.permutation(n))


ALL_SPACES = (fm.circle(), fm.torus(2), fm.sphere2())
