import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reprodet.core.exceptions import DegenerateMinor, InvalidSystem, SizeError
from reprodet.core.generator import generate_symmetric
from reprodet.core.kernel import border_determinants, kernel_matrix
from reprodet.core.matrix import det_exact
from reprodet.core.report import Verdict
from reprodet.core.symmetric import (
    SymmetricSystem,
    Variant,
    alternating_matrix,
    lift,
    random_free_triplet,
    reflect,
    verify_alternating_factorizations,
    verify_factorization,
    verify_lifted_main_theorem,
    verify_partial_specialization,
    verify_reflection,
    verify_symmetric_big_borders,
)

from .conftest import MERSENNE_61


class TestSystem:
    def test_opposite_k_rejected(self):
        with pytest.raises(InvalidSystem):
            SymmetricSystem(((1, 1, 1), (1, 1, -1)))

    def test_zero_k_rejected(self):
        with pytest.raises(InvalidSystem):
            SymmetricSystem(((1, 1, 0),))

    def test_duplicate_k_rejected(self):
        with pytest.raises(InvalidSystem):
            SymmetricSystem(((1, 1, 2), (3, 1, 2)))

    def test_reflect(self):
        assert reflect((1, 2, 3)) == (1, -2, -3)

    def test_lift(self, s2):
        lifted = lift(s2)
        assert lifted.right == ((1, -1, -1), (1, -3, -2))
        assert kernel_matrix(lifted, 2).to_rows() == [
            [1, Fraction(4, 3)],
            [Fraction(4, 3), Fraction(3, 2)],
        ]

    def test_lifted_determinants(self, s2):
        b = border_determinants(lift(s2))
        assert b.dn1 == Fraction(-5, 18)
        assert (b.u_raw, b.v_raw) == (Fraction(-1, 3), Fraction(5, 3))


class TestReflection:
    def test_s2(self, s2):
        report = verify_reflection(s2)
        assert report.passed
        assert report.get("symmetric.kernel_symmetric").verdict is Verdict.PASS

    @settings(max_examples=25, deadline=None)
    @given(n=st.integers(min_value=0, max_value=4), seed=st.integers(min_value=0, max_value=10**6))
    def test_random(self, n: int, seed: int):
        assert verify_reflection(generate_symmetric(n, random.Random(seed), 20)).passed


class TestFactorization:
    def test_s2(self, s2):
        b = border_determinants(lift(s2))
        assert b.dn1 * b.dn * s2.k == Fraction(-5, 9)
        assert b.u_raw * b.v_raw == Fraction(-5, 9)
        assert verify_factorization(s2).passed

    def test_lifted_main_theorem(self, s2):
        report = verify_lifted_main_theorem(s2)
        assert report.passed
        assert report.records[0].identity == "symmetric.lifted_main_theorem"

    @settings(max_examples=25, deadline=None)
    @given(n=st.integers(min_value=0, max_value=4), seed=st.integers(min_value=0, max_value=10**6))
    def test_random(self, n: int, seed: int):
        assert verify_factorization(generate_symmetric(n, random.Random(seed), 20)).passed

    def test_prime_field(self, s2):
        assert verify_factorization(s2.project(MERSENNE_61)).passed


class TestAlternating:
    def test_u_led(self, s2):
        m = alternating_matrix(s2, Variant.U_LED, 2)
        assert m.to_rows() == [[1, 1], [1, 6]]
        assert det_exact(m) == 5

    def test_v_led(self, s2):
        m = alternating_matrix(s2, "v-led", 2)
        assert m.to_rows() == [[1, 3], [1, 2]]
        assert det_exact(m) == -1

    def test_leading_size(self, s2):
        assert alternating_matrix(s2, Variant.U_LED, 1).to_rows() == [[1]]
        with pytest.raises(SizeError):
            alternating_matrix(s2, Variant.U_LED, 3)

    def test_unknown_variant(self, s2):
        with pytest.raises(ValueError):
            alternating_matrix(s2, "w-led", 2)

    def test_s2(self, s2):
        report = verify_alternating_factorizations(s2)
        assert report.passed
        assert [r.identity for r in report.records] == [
            "symmetric.dn1_factorization",
            "symmetric.dn_factorization",
            "symmetric.u_led_quotient",
            "symmetric.v_led_quotient",
            "symmetric.split_u",
            "symmetric.split_v",
        ]

    @settings(max_examples=30, deadline=None)
    @given(n=st.integers(min_value=0, max_value=5), seed=st.integers(min_value=0, max_value=10**6))
    def test_random(self, n: int, seed: int):
        report = verify_alternating_factorizations(generate_symmetric(n, random.Random(seed), 20))
        assert report.passed

    def test_vanishing_leading_minor_skips_quotients(self):
        # u_1 = 0 makes D_1 = 0
        system = SymmetricSystem(((0, 1, 1), (1, 3, 2)))
        report = verify_alternating_factorizations(system)
        assert report.passed
        assert report.get("symmetric.u_led_quotient").verdict is Verdict.SKIPPED
        assert report.get("symmetric.v_led_quotient").verdict is Verdict.SKIPPED


class TestPartialSpecialization:
    def test_s2(self, s2):
        assert verify_partial_specialization(s2, (2, 5, 7)).passed

    def test_free_triplet_is_valid(self, s2, rng):
        triplet = random_free_triplet(s2, rng)
        assert triplet is not None
        assert verify_partial_specialization(s2, triplet).passed

    @settings(max_examples=25, deadline=None)
    @given(n=st.integers(min_value=0, max_value=4), seed=st.integers(min_value=0, max_value=10**6))
    def test_random(self, n: int, seed: int):
        rng = random.Random(seed)
        system = generate_symmetric(n, rng, 20)
        triplet = random_free_triplet(system, rng)
        if triplet is not None:
            assert verify_partial_specialization(system, triplet).passed


class TestBigBorders:
    def test_s2(self, s2):
        report = verify_symmetric_big_borders(s2)
        assert report.passed
        assert [r.identity for r in report.records] == ["symmetric.big_u", "symmetric.big_v"]

    def test_degenerate(self):
        with pytest.raises(DegenerateMinor):
            verify_symmetric_big_borders(SymmetricSystem(((0, 1, 1), (1, 3, 2))))

    @settings(max_examples=20, deadline=None)
    @given(n=st.integers(min_value=0, max_value=4), seed=st.integers(min_value=0, max_value=10**6))
    def test_random(self, n: int, seed: int):
        system = generate_symmetric(n, random.Random(seed), 20)
        try:
            report = verify_symmetric_big_borders(system)
        except DegenerateMinor:
            return
        assert report.passed
