import random

import pytest

from kakeya.field import FieldSpec

# monic irreducible moduli, low-to-high coefficients
MODULI = {
    4: (2, 2, (1, 1, 1)),
    8: (2, 3, (1, 1, 0, 1)),
    9: (3, 2, (1, 0, 1)),
    16: (2, 4, (1, 1, 0, 0, 1)),
}


def gf(q):
    if q in MODULI:
        p, k, mod = MODULI[q]
        return FieldSpec(p, k, mod)
    return FieldSpec(q)


SMALL_ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


@pytest.fixture(params=SMALL_ORDERS, ids=lambda q: f"GF{q}")
def small_field(request):
    return gf(request.param)


@pytest.fixture
def rng():
    return random.Random(20240611)
