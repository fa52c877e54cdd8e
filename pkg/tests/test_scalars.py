import random
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from reprodet.core.exceptions import (
    BadReduction,
    FieldMismatch,
    InvalidModuli,
    NotPrime,
    ValidationError,
    ZeroDenominator,
)
from reprodet.core.scalars import (
    RATIONAL,
    PrimeField,
    PrimeFieldElement,
    crt_combine,
    field_from_spec,
    format_scalar,
    is_probable_prime,
    normalize,
    parse_scalar,
    prime_field,
    project_mod_p,
    random_prime,
)

from .conftest import MERSENNE_61

PRIMES = [1000003, 998244353, MERSENNE_61]

residues = st.integers(min_value=-10**30, max_value=10**30)
rationals = st.fractions(max_denominator=10**12)


class TestNormalize:
    def test_reduces_by_gcd(self):
        assert normalize(2, 4) == Fraction(1, 2)

    def test_sign_on_numerator(self):
        r = normalize(3, -6)
        assert (r.numerator, r.denominator) == (-1, 2)

    def test_zero_is_canonical(self):
        r = normalize(0, 7)
        assert (r.numerator, r.denominator) == (0, 1)

    def test_zero_denominator(self):
        with pytest.raises(ZeroDenominator):
            normalize(1, 0)

    def test_zero_denominator_is_a_zero_division(self):
        with pytest.raises(ZeroDivisionError):
            normalize(5, 0)


class TestProjection:
    def test_half_mod_seven(self):
        assert project_mod_p(Fraction(1, 2), 7) == 4

    def test_integer(self):
        assert project_mod_p(Fraction(3), 5).residue == 3

    def test_denominator_divisible_by_p(self):
        with pytest.raises(BadReduction):
            project_mod_p(Fraction(1, 5), 5)

    @given(a=rationals, b=rationals)
    def test_ring_homomorphism(self, a: Fraction, b: Fraction):
        p = 998244353
        assume(a.denominator % p and b.denominator % p)
        pa, pb = project_mod_p(a, p), project_mod_p(b, p)
        assert project_mod_p(a + b, p) == pa + pb
        assert project_mod_p(a - b, p) == pa - pb
        assert project_mod_p(a * b, p) == pa * pb


class TestCRT:
    def test_basic(self):
        assert crt_combine([(1, 3), (2, 5)]) == 7

    def test_zero(self):
        assert crt_combine([(0, 3), (0, 5)]) == 0

    def test_symmetric_range(self):
        assert crt_combine([(2, 3), (4, 5)]) == -1

    def test_non_coprime(self):
        with pytest.raises(InvalidModuli):
            crt_combine([(1, 6), (1, 9)])

    @given(x=st.integers(min_value=-10**30, max_value=10**30))
    def test_recovers_signed_integers(self, x: int):
        pairs = [(x % p, p) for p in PRIMES]
        assert crt_combine(pairs) == x


class TestPrimeField:
    def test_rejects_composite(self):
        with pytest.raises(NotPrime):
            PrimeField(15)

    def test_cached_per_modulus(self):
        assert prime_field(7) is prime_field(7)

    def test_identities(self, field):
        zero, one = field.zero(), field.one()
        assert zero + one == one
        assert one * one == one
        assert zero * one == zero
        with pytest.raises(ZeroDivisionError):
            zero.inverse()

    def test_residue_range(self, field):
        e = field(-1)
        assert 0 <= e.residue < field.modulus
        assert e.residue == field.modulus - 1

    @given(a=residues, b=residues, c=residues)
    def test_ring_axioms(self, field, a: int, b: int, c: int):
        x, y, z = field(a), field(b), field(c)
        assert x + y == y + x
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + (-x) == field.zero()

    def test_random_samples(self, field):
        rng = random.Random(4)
        samples = [field.random(rng) for _ in range(20)]
        assert all(s.field == field and 0 <= s.residue < field.modulus for s in samples)
        again = random.Random(4)
        assert samples == [field.random(again) for _ in range(20)]
        for a, b in zip(samples, samples[1:]):
            assert a * b == b * a
            if a != field.zero():
                assert a * a.inverse() == field.one()

    @given(a=residues)
    def test_inverse(self, field, a: int):
        assume(a % field.modulus)
        x = field(a)
        assert x * x.inverse() == field.one()
        assert field.one() / x == x.inverse()

    def test_mixed_fields(self):
        with pytest.raises(FieldMismatch):
            prime_field(7)(1) + prime_field(11)(1)

    def test_rational_field_rejects_residues(self):
        with pytest.raises(FieldMismatch):
            RATIONAL(prime_field(7)(3))

    def test_elements_are_immutable(self):
        e = prime_field(7)(3)
        with pytest.raises(AttributeError):
            e.residue = 4

    @given(a=rationals, b=rationals, c=rationals)
    def test_rational_axioms(self, a: Fraction, b: Fraction, c: Fraction):
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        if a:
            assert a * (1 / a) == 1


class TestPrimes:
    def test_known_primes(self):
        assert is_probable_prime(2)
        assert is_probable_prime(MERSENNE_61)
        assert not is_probable_prime(1)
        assert not is_probable_prime(MERSENNE_61 * 3)

    def test_random_prime_bit_length(self):
        rng = random.Random(5)
        for _ in range(5):
            p = random_prime(rng, 62)
            assert p.bit_length() == 62
            assert is_probable_prime(p)

    def test_random_prime_is_deterministic(self):
        assert random_prime(random.Random(9)) == random_prime(random.Random(9))


class TestTextForm:
    def test_parse_rational(self):
        assert parse_scalar("-3/6") == Fraction(-1, 2)
        assert parse_scalar("7") == 7

    def test_parse_into_prime_field(self):
        assert parse_scalar("1/2", prime_field(7)) == 4

    @pytest.mark.parametrize("text", ["1.5", "a", "1/-2", "", " 1", "1/0"])
    def test_parse_rejects(self, text: str):
        with pytest.raises((ValidationError, ZeroDenominator)):
            parse_scalar(text)

    def test_format(self):
        assert format_scalar(Fraction(-1, 2)) == "-1/2"
        assert format_scalar(Fraction(4, 2)) == "2"
        assert format_scalar(prime_field(7)(-1)) == "6"

    @given(r=rationals)
    def test_text_form_is_exact(self, r: Fraction):
        assert parse_scalar(format_scalar(r)) == r

    def test_field_selector(self):
        assert field_from_spec("rational") is RATIONAL
        assert field_from_spec("prime:7") == prime_field(7)
        with pytest.raises(ValidationError):
            field_from_spec("real")
        with pytest.raises(NotPrime):
            field_from_spec("prime:9")

    def test_element_equality_with_int(self):
        assert PrimeFieldElement(10, prime_field(7)) == 3
