"""Seeded rejection sampling of valid general and symmetric systems"""
import logging
import random
from typing import Callable, List

from .exceptions import GenerationFailed, ValidationError
from .kernel import SextupleSystem
from .scalars import RATIONAL, Field, Scalar
from .symmetric import SymmetricSystem

logger = logging.getLogger(__name__)

DEFAULT_RANGE = 20
MAX_ATTEMPTS = 10_000


class _Sampler:
    """Integer draws from [-range, range] sharing one attempt budget"""

    def __init__(self, rng: random.Random, value_range: int, field: Field, max_attempts: int):
        if value_range < 1:
            raise ValidationError(f"Range must be at least 1, got {value_range}")
        if max_attempts < 1:
            raise ValidationError(f"Attempt budget must be positive, got {max_attempts}")
        self.rng = rng
        self.value_range = value_range
        self.field = field
        self.max_attempts = max_attempts
        self.attempts = 0

    def free(self) -> Scalar:
        return self.field(self.rng.randint(-self.value_range, self.value_range))

    def constrained(self, accept: Callable[[Scalar], bool], label: str) -> Scalar:
        while self.attempts < self.max_attempts:
            self.attempts += 1
            candidate = self.free()
            if accept(candidate):
                return candidate
            logger.debug(f"Rejected {label} = {candidate}")
        raise GenerationFailed(
            f"No valid {label} within {self.max_attempts} draws from [-{self.value_range}, {self.value_range}]"
        )


def generate_general(n: int, rng: random.Random, value_range: int = DEFAULT_RANGE,
                     max_attempts: int = MAX_ATTEMPTS, field: Field = RATIONAL) -> SextupleSystem:
    if n < 0:
        raise ValidationError(f"n must be non-negative, got {n}")
    sampler = _Sampler(rng, value_range, field, max_attempts)
    ks: List[Scalar] = []
    ls: List[Scalar] = []
    left, right = [], []
    for i in range(n + 1):
        u, v = sampler.free(), sampler.free()
        k = sampler.constrained(lambda c: c not in ks and c not in ls, f"k_{i + 1}")
        ks.append(k)
        x, y = sampler.free(), sampler.free()
        l = sampler.constrained(lambda c: c not in ls and c not in ks, f"l_{i + 1}")
        ls.append(l)
        left.append((u, v, k))
        right.append((x, y, l))
    logger.debug(f"Generated general system n={n} after {sampler.attempts} constrained draws")
    return SextupleSystem(tuple(left), tuple(right), field)


def generate_symmetric(n: int, rng: random.Random, value_range: int = DEFAULT_RANGE,
                       max_attempts: int = MAX_ATTEMPTS, field: Field = RATIONAL) -> SymmetricSystem:
    if n < 0:
        raise ValidationError(f"n must be non-negative, got {n}")
    sampler = _Sampler(rng, value_range, field, max_attempts)
    ks: List[Scalar] = []
    triplets = []

    def acceptable(c: Scalar) -> bool:
        return bool(c + c) and all(c != k and bool(c + k) for k in ks)

    for i in range(n + 1):
        u, v = sampler.free(), sampler.free()
        k = sampler.constrained(acceptable, f"k_{i + 1}")
        ks.append(k)
        triplets.append((u, v, k))
    logger.debug(f"Generated symmetric system n={n} after {sampler.attempts} constrained draws")
    return SymmetricSystem(tuple(triplets), field)
