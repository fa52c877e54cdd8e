import random

import pytest

from reprodet.core.kernel import SextupleSystem
from reprodet.core.scalars import prime_field
from reprodet.core.symmetric import SymmetricSystem

# 2^61 - 1
MERSENNE_61 = 2305843009213693951


@pytest.fixture
def s1() -> SextupleSystem:
    """n = 1 system with kernel [[1, 0], [1, -2]]"""
    return SextupleSystem(((1, 1, 0), (1, 3, 2)), ((1, 2, 1), (1, 1, 3)))


@pytest.fixture
def s2() -> SymmetricSystem:
    """n = 1 symmetric system with kernel [[1, 4/3], [4/3, 3/2]]"""
    return SymmetricSystem(((1, 1, 1), (1, 3, 2)))


@pytest.fixture
def single() -> SextupleSystem:
    """n = 0 system (u, v, k; x, y, l) = (1, 2, 0; 3, 4, 5)"""
    return SextupleSystem(((1, 2, 0),), ((3, 4, 5),))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(1234)


@pytest.fixture(scope="session")
def field():
    return prime_field(MERSENNE_61)
