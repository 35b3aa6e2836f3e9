import random

import pytest

from origami_veech import compute_veech
from origami_veech.catalog import D, L23, TRIVIAL
from origami_veech.origami import NotTransitiveError, Origami


@pytest.fixture(scope="session")
def gamma_l23():
    return compute_veech(L23)


@pytest.fixture(scope="session")
def gamma_d():
    return compute_veech(D)


@pytest.fixture(scope="session")
def gamma_trivial():
    return compute_veech(TRIVIAL)


def random_perm(rng, d):
    p = list(range(d))
    rng.shuffle(p)
    return tuple(p)


def random_origami(rng, d_min=1, d_max=8):
    """A random transitive pair; retries until transitive."""
    while True:
        d = rng.randint(d_min, d_max)
        try:
            return Origami(d, random_perm(rng, d), random_perm(rng, d))
        except NotTransitiveError:
            continue


@pytest.fixture
def rng():
    return random.Random(20240611)
