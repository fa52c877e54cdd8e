"""
Exact scalar fields: canonical rationals and prime-field residues, plus the
rational <-> residue bridges used by multimodular computation.
"""
import logging
import random
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Any, Iterable, Optional, Tuple, Union

import gmpy2

from .exceptions import (
    BadReduction,
    FieldMismatch,
    InvalidModuli,
    NotPrime,
    ValidationError,
    ZeroDenominator,
)

logger = logging.getLogger(__name__)

Rational = Fraction

# 40 Miller-Rabin rounds: error below 4^-40 = 2^-80
PRIMALITY_ROUNDS = 40
DEFAULT_PRIME_BITS = 62

_SCALAR_TEXT = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def normalize(num: int, den: int) -> Fraction:
    """Build the canonical rational num/den (sign on the numerator, 0 as 0/1)"""
    if den == 0:
        raise ZeroDenominator(f"Cannot build rational {num}/0")
    return Fraction(num, den)


def is_probable_prime(p: int, rounds: int = PRIMALITY_ROUNDS) -> bool:
    return p >= 2 and bool(gmpy2.is_prime(p, rounds))


class RationalField:
    """Field context for arbitrary-precision rationals"""
    name = "rational"
    characteristic = 0

    def __call__(self, value: Any) -> Fraction:
        if isinstance(value, PrimeFieldElement):
            raise FieldMismatch(f"Cannot lift residue {value} to a rational")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise FieldMismatch(f"Unsupported scalar type {type(value).__name__}")

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash(self.name)

    def __repr__(self) -> str:
        return "RationalField()"


RATIONAL = RationalField()


class PrimeField:
    """Field context Z/pZ; the modulus is checked with a fixed-round probabilistic test"""

    __slots__ = ("modulus",)

    def __init__(self, modulus: int, rounds: int = PRIMALITY_ROUNDS):
        modulus = int(modulus)
        if not is_probable_prime(modulus, rounds):
            raise NotPrime(f"Modulus {modulus} is not prime")
        self.modulus = modulus

    @property
    def name(self) -> str:
        return f"prime:{self.modulus}"

    @property
    def characteristic(self) -> int:
        return self.modulus

    def __call__(self, value: Any) -> "PrimeFieldElement":
        if isinstance(value, PrimeFieldElement):
            if value.field != self:
                raise FieldMismatch(
                    f"Residue mod {value.modulus} used in field mod {self.modulus}"
                )
            return value
        if isinstance(value, int):
            return PrimeFieldElement(value % self.modulus, self)
        if isinstance(value, Fraction):
            return project_mod_p(value, self)
        raise FieldMismatch(f"Unsupported scalar type {type(value).__name__}")

    def zero(self) -> "PrimeFieldElement":
        return PrimeFieldElement(0, self)

    def one(self) -> "PrimeFieldElement":
        return PrimeFieldElement(1, self)

    def random(self, rng: Optional[random.Random] = None) -> "PrimeFieldElement":
        rng = rng or random.Random()
        return PrimeFieldElement(rng.randrange(self.modulus), self)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(("prime", self.modulus))

    def __repr__(self) -> str:
        return f"PrimeField({self.modulus})"


@lru_cache(maxsize=None)
def prime_field(modulus: int) -> PrimeField:
    """Shared field context per modulus"""
    return PrimeField(modulus)


Field = Union[RationalField, PrimeField]


class PrimeFieldElement:
    """Immutable residue in [0, p)"""

    __slots__ = ("residue", "field")

    def __init__(self, residue: int, field: PrimeField):
        object.__setattr__(self, "residue", int(residue) % field.modulus)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("PrimeFieldElement is immutable")

    @property
    def modulus(self) -> int:
        return self.field.modulus

    def _coerce(self, other: Any) -> Optional[int]:
        if isinstance(other, PrimeFieldElement):
            if other.field.modulus != self.field.modulus:
                raise FieldMismatch(
                    f"Cannot combine residues mod {self.modulus} and mod {other.modulus}"
                )
            return other.residue
        if isinstance(other, int):
            return other % self.field.modulus
        return None

    def _make(self, residue: int) -> "PrimeFieldElement":
        return PrimeFieldElement(residue, self.field)

    def __add__(self, other: Any) -> "PrimeFieldElement":
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return self._make(self.residue + r)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "PrimeFieldElement":
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return self._make(self.residue - r)

    def __rsub__(self, other: Any) -> "PrimeFieldElement":
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return self._make(r - self.residue)

    def __mul__(self, other: Any) -> "PrimeFieldElement":
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return self._make(self.residue * r)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "PrimeFieldElement":
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return self * self._make(r).inverse()

    def __rtruediv__(self, other: Any) -> "PrimeFieldElement":
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return self._make(r) * self.inverse()

    def __neg__(self) -> "PrimeFieldElement":
        return self._make(-self.residue)

    def __pos__(self) -> "PrimeFieldElement":
        return self

    def __pow__(self, exponent: int) -> "PrimeFieldElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return self._make(pow(self.residue, exponent, self.modulus))

    def inverse(self) -> "PrimeFieldElement":
        if self.residue == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.modulus}")
        return self._make(int(gmpy2.invert(self.residue, self.modulus)))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PrimeFieldElement):
            return other.modulus == self.modulus and other.residue == self.residue
        if isinstance(other, int):
            return self.residue == other % self.modulus
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.residue, self.modulus))

    def __bool__(self) -> bool:
        return self.residue != 0

    def __int__(self) -> int:
        return self.residue

    def __repr__(self) -> str:
        return f"PrimeFieldElement({self.residue}, p={self.modulus})"

    def __str__(self) -> str:
        return str(self.residue)


Scalar = Union[int, Fraction, PrimeFieldElement]


def field_of(value: Scalar) -> Field:
    """Field context a scalar lives in (integers count as rationals)"""
    if isinstance(value, PrimeFieldElement):
        return value.field
    if isinstance(value, (int, Fraction)):
        return RATIONAL
    raise FieldMismatch(f"Unsupported scalar type {type(value).__name__}")


def project_mod_p(r: Union[int, Fraction], p: Union[int, PrimeField]) -> PrimeFieldElement:
    """Reduce a rational modulo p as numerator * denominator^-1"""
    field = p if isinstance(p, PrimeField) else prime_field(int(p))
    r = Fraction(r)
    if r.denominator % field.modulus == 0:
        raise BadReduction(f"{field.modulus} divides the denominator of {r}")
    inv = int(gmpy2.invert(r.denominator, field.modulus))
    return PrimeFieldElement(r.numerator * inv, field)


def crt_combine(residues: Iterable[Tuple[Union[int, PrimeFieldElement], int]]) -> int:
    """
    Combine (residue, modulus) pairs into the unique representative of the
    symmetric range (-M/2, M/2], M the product of the moduli.
    """
    value, product = 0, 1
    for residue, modulus in residues:
        modulus = int(modulus)
        if modulus < 1 or gcd(product, modulus) != 1:
            raise InvalidModuli(f"Modulus {modulus} is not coprime with the previous moduli")
        residue = int(residue)
        step = (residue - value) * int(gmpy2.invert(product, modulus)) % modulus if modulus > 1 else 0
        value += product * step
        product *= modulus
    value %= product
    if value > product // 2:
        value -= product
    return value


def random_prime(rng: Optional[random.Random] = None, bits: int = DEFAULT_PRIME_BITS,
                 rounds: int = PRIMALITY_ROUNDS) -> int:
    """Uniform probable prime with exactly `bits` bits"""
    rng = rng or random.Random()
    low, high = 1 << (bits - 1), 1 << bits
    while True:
        candidate = rng.randrange(low, high) | 1
        if candidate < high and is_probable_prime(candidate, rounds):
            return candidate


def field_from_spec(spec: str) -> Field:
    """Parse the field selector used by instance files and the CLI"""
    if spec == "rational":
        return RATIONAL
    if spec.startswith("prime:"):
        text = spec[len("prime:"):]
        if not text.isdigit():
            raise ValidationError(f"Invalid prime field selector '{spec}'")
        return prime_field(int(text))
    raise ValidationError(f"Unknown field '{spec}' (expected 'rational' or 'prime:P')")


def parse_scalar(text: str, field: Field = RATIONAL) -> Scalar:
    """Parse the "p/q" (or "p") text form into the given field"""
    if not isinstance(text, str):
        raise ValidationError(f"Scalar must be a string, got {type(text).__name__}")
    match = _SCALAR_TEXT.match(text)
    if match is None:
        raise ValidationError(f"Invalid scalar '{text}' (expected 'p' or 'p/q')")
    value = normalize(int(match.group(1)), int(match.group(2) or 1))
    if isinstance(field, PrimeField):
        try:
            return project_mod_p(value, field)
        except BadReduction as e:
            raise ValidationError(f"Scalar '{text}' does not reduce mod {field.modulus}: {e.detail}")
    return value


def format_scalar(value: Scalar) -> str:
    """Text form of a scalar: "p" when the denominator is 1, else "p/q"; residues as integers"""
    if isinstance(value, PrimeFieldElement):
        return str(value.residue)
    return str(Fraction(value))
