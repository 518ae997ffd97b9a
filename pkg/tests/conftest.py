import random

import pytest

from comtes.acceptance import random_comte


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def make_comte(rng):
    def make(nmax=5, amax=7):
        return random_comte(rng, nmax=nmax, amax=amax)

    return make
