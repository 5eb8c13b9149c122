import itertools

import numpy as np
import pytest
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from gateforge.synthesis import SynthesisParams

GRID = [
    SynthesisParams(n, m, tau, a2)
    for n, m, tau, a2 in itertools.product(range(-2, 3), range(-2, 3), (0.5, 1.0, 2.0), (0.7, 1.0, 3.0))
]


def random_hermitian(rng, dim, scale=1.0):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * (a + a.conj().T) / 2


def hermitian_strategy(dim, bound=5.0):
    parts = hnp.arrays(np.float64, (2, dim, dim), elements=st.floats(-bound, bound))
    return parts.map(lambda p: ((p[0] + 1j * p[1]) + (p[0] + 1j * p[1]).conj().T) / 2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
