from math import pi

import pytest

from qmemory.services.linalg import density_from_pure
from qmemory.services.states import make_bell, make_ghz, make_w_purification, sample_random_mixed

W_GATED = (0.4 * pi, pi / 4)        # S(A|B) < 0 here
W_UNGATED = (0.9 * pi, pi / 4)      # S(A|B) > 0 here


@pytest.fixture
def bell():
    return make_bell()


@pytest.fixture
def bell_rho(bell):
    return density_from_pure(bell)


@pytest.fixture
def ghz():
    return make_ghz(3)


@pytest.fixture
def w_gated():
    return make_w_purification(*W_GATED)


@pytest.fixture
def w_ungated():
    return make_w_purification(*W_UNGATED)


@pytest.fixture(params=[(1, 11), (2, 12), (3, 13), (4, 14)], ids=lambda p: f"rank{p[0]}")
def random_two_qubit(request):
    rank, seed = request.param
    return sample_random_mixed((2, 2), rank, seed)
