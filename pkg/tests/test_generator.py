import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reprodet.core.exceptions import GenerationFailed, ValidationError
from reprodet.core.generator import generate_general, generate_symmetric
from reprodet.core.kernel import SextupleSystem
from reprodet.core.scalars import prime_field
from reprodet.core.symmetric import SymmetricSystem


class TestGeneral:
    def test_deterministic(self):
        assert generate_general(3, random.Random(42)) == generate_general(3, random.Random(42))

    def test_seeds_differ(self):
        assert generate_general(3, random.Random(1)) != generate_general(3, random.Random(2))

    def test_values_in_range(self):
        system = generate_general(4, random.Random(7), value_range=5)
        assert isinstance(system, SextupleSystem)
        assert system.n == 4
        assert all(-5 <= value <= 5 for t in system.left + system.right for value in t)

    def test_range_too_small(self):
        # 2(n+1) = 6 distinct k's and l's cannot come from {-1, 0, 1}
        with pytest.raises(GenerationFailed):
            generate_general(2, random.Random(3), value_range=1)

    def test_attempt_budget(self):
        with pytest.raises(GenerationFailed):
            generate_general(5, random.Random(3), value_range=20, max_attempts=2)

    def test_invalid_parameters(self):
        with pytest.raises(ValidationError):
            generate_general(2, random.Random(0), value_range=0)
        with pytest.raises(ValidationError):
            generate_general(-1, random.Random(0))

    def test_prime_field(self):
        system = generate_general(2, random.Random(5), field=prime_field(101))
        assert system.field == prime_field(101)

    @settings(max_examples=50, deadline=None)
    @given(n=st.integers(min_value=0, max_value=6), seed=st.integers())
    def test_always_valid(self, n: int, seed: int):
        system = generate_general(n, random.Random(seed))
        ks = [t[2] for t in system.left]
        ls = [t[2] for t in system.right]
        assert len(set(ks + ls)) == 2 * (n + 1)


class TestSymmetric:
    def test_deterministic(self):
        assert generate_symmetric(3, random.Random(42)) == generate_symmetric(3, random.Random(42))

    def test_type(self):
        assert isinstance(generate_symmetric(2, random.Random(0)), SymmetricSystem)

    def test_range_too_small(self):
        # only k = 1 or k = -1 is available, and never both
        with pytest.raises(GenerationFailed):
            generate_symmetric(1, random.Random(3), value_range=1)

    @settings(max_examples=50, deadline=None)
    @given(n=st.integers(min_value=0, max_value=6), seed=st.integers())
    def test_always_valid(self, n: int, seed: int):
        system = generate_symmetric(n, random.Random(seed))
        ks = [t[2] for t in system.triplets]
        assert all(ki + kj != 0 for ki in ks for kj in ks)
        assert len(set(ks)) == n + 1
