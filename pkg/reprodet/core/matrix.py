"""
Dense exact matrices and three independent determinant engines:
cofactor expansion (oracle), exact elimination (main engine) and
multimodular reconstruction (integer performance path).
"""
import logging
import random
from concurrent.futures import Executor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt, lcm, prod
from typing import Any, Callable, List, Optional, Sequence, Tuple

import gmpy2

from .exceptions import (
    FieldMismatch,
    MinorIndexError,
    NonIntegerMatrix,
    ShapeError,
    SingularDenominator,
    SizeGuard,
    ValidationError,
)
from .scalars import (
    DEFAULT_PRIME_BITS,
    RATIONAL,
    Field,
    PrimeField,
    Scalar,
    crt_combine,
    field_of,
    random_prime,
)

logger = logging.getLogger(__name__)

LAPLACE_MAX_SIZE = 9
CLEAR_DENOMINATOR_BITS = 64
MULTIMODULAR_SEED = 0x5EED


class DenseMatrix:
    """Immutable row-major matrix whose entries share one field context"""

    __slots__ = ("rows", "cols", "field", "_entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[Scalar], field: Optional[Field] = None):
        entries = tuple(entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise ShapeError(f"{len(entries)} entries do not fill a {rows}x{cols} matrix")
        if isinstance(field, PrimeField):
            entries = tuple(field(e) for e in entries)
        else:
            fields = {field_of(e) for e in entries}
            if len(fields) > 1:
                raise FieldMismatch(f"Matrix entries span several fields: {sorted(f.name for f in fields)}")
            inferred = fields.pop() if fields else (field or RATIONAL)
            if field is not None and field != inferred:
                raise FieldMismatch(f"Entries live in {inferred.name}, not {field.name}")
            field = inferred
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_entries", entries)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("DenseMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], field: Optional[Field] = None) -> "DenseMatrix":
        rows = [list(r) for r in rows]
        width = len(rows[0]) if rows else 0
        if any(len(r) != width for r in rows):
            raise ShapeError("Rows have different lengths")
        return cls(len(rows), width, [e for r in rows for e in r], field)

    @classmethod
    def identity(cls, n: int, field: Field = RATIONAL) -> "DenseMatrix":
        one, zero = (1, 0) if field == RATIONAL else (field.one(), field.zero())
        return cls(n, n, [one if i == j else zero for i in range(n) for j in range(n)], field)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_integer(self) -> bool:
        """True for rational matrices whose entries are all integers"""
        return self.field == RATIONAL and all(
            isinstance(e, int) or e.denominator == 1 for e in self._entries
        )

    @property
    def entries(self) -> Tuple[Scalar, ...]:
        return self._entries

    def __getitem__(self, key: Tuple[int, int]) -> Scalar:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise MinorIndexError(f"Entry ({i}, {j}) outside a {self.rows}x{self.cols} matrix")
        return self._entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[Scalar, ...]:
        return self._entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Tuple[Scalar, ...]:
        return self._entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> List[List[Scalar]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "DenseMatrix":
        return DenseMatrix(self.cols, self.rows,
                           [self._entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
                           self.field)

    def map(self, fn: Callable[[Scalar], Scalar], field: Optional[Field] = None) -> "DenseMatrix":
        return DenseMatrix(self.rows, self.cols, [fn(e) for e in self._entries], field)

    def swap_rows(self, i: int, j: int) -> "DenseMatrix":
        order = list(range(self.rows))
        order[i], order[j] = order[j], order[i]
        return self.select(order, range(self.cols))

    def select(self, rows: Sequence[int], cols: Sequence[int]) -> "DenseMatrix":
        """Submatrix on the given rows and columns, in the given order"""
        rows, cols = list(rows), list(cols)
        for i in rows:
            if not 0 <= i < self.rows:
                raise MinorIndexError(f"Row {i} outside a {self.rows}x{self.cols} matrix")
        for j in cols:
            if not 0 <= j < self.cols:
                raise MinorIndexError(f"Column {j} outside a {self.rows}x{self.cols} matrix")
        return DenseMatrix(len(rows), len(cols),
                           [self._entries[i * self.cols + j] for i in rows for j in cols],
                           self.field)

    def with_column(self, j: int, values: Sequence[Scalar]) -> "DenseMatrix":
        rows = self.to_rows()
        if len(values) != self.rows:
            raise ShapeError(f"Column of length {len(values)} for {self.rows} rows")
        for i, v in enumerate(values):
            rows[i][j] = v
        return DenseMatrix.from_rows(rows, self.field)

    def with_row(self, i: int, values: Sequence[Scalar]) -> "DenseMatrix":
        rows = self.to_rows()
        if len(values) != self.cols:
            raise ShapeError(f"Row of length {len(values)} for {self.cols} columns")
        rows[i] = list(values)
        return DenseMatrix.from_rows(rows, self.field)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._entries))

    def __repr__(self) -> str:
        return f"DenseMatrix({self.to_rows()!r}, field={self.field.name})"


@dataclass(frozen=True)
class MinorSpec:
    """Rows and columns to delete; both strictly increasing"""
    deleted_rows: Tuple[int, ...] = ()
    deleted_cols: Tuple[int, ...] = ()

    def __post_init__(self):
        for name in ("deleted_rows", "deleted_cols"):
            indices = tuple(getattr(self, name))
            if any(b <= a for a, b in zip(indices, indices[1:])):
                raise ValidationError(f"{name} must be strictly increasing, got {indices}")
            object.__setattr__(self, name, indices)


def minor(M: DenseMatrix, spec: MinorSpec) -> DenseMatrix:
    """Submatrix with the listed rows and columns removed, order preserved"""
    for i in spec.deleted_rows:
        if not 0 <= i < M.rows:
            raise MinorIndexError(f"Deleted row {i} outside a {M.rows}x{M.cols} matrix")
    for j in spec.deleted_cols:
        if not 0 <= j < M.cols:
            raise MinorIndexError(f"Deleted column {j} outside a {M.rows}x{M.cols} matrix")
    rows = [i for i in range(M.rows) if i not in spec.deleted_rows]
    cols = [j for j in range(M.cols) if j not in spec.deleted_cols]
    return M.select(rows, cols)


def _require_square(M: DenseMatrix) -> None:
    if not M.is_square:
        raise ShapeError(f"Determinant of a non-square {M.rows}x{M.cols} matrix")


def det_laplace(M: DenseMatrix, max_size: int = LAPLACE_MAX_SIZE) -> Scalar:
    """Cofactor expansion along rows, memoised on the remaining column set"""
    _require_square(M)
    if M.rows > max_size:
        raise SizeGuard(f"Cofactor expansion limited to {max_size}x{max_size}, got {M.rows}x{M.rows}")
    n = M.rows
    rows = M.to_rows()
    zero, one = M.field.zero(), M.field.one()

    @lru_cache(maxsize=None)
    def expand(depth: int, cols: Tuple[int, ...]) -> Scalar:
        if depth == n:
            return one
        total = zero
        for pos, c in enumerate(cols):
            entry = rows[depth][c]
            if not entry:
                continue
            term = entry * expand(depth + 1, cols[:pos] + cols[pos + 1:])
            total = total - term if pos % 2 else total + term
        return total

    return expand(0, tuple(range(n)))


def _det_bareiss(a: List[List[int]]) -> int:
    """Fraction-free elimination; every division is exact"""
    n = len(a)
    if n == 0:
        return 1
    sign, previous = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // previous
        previous = pivot
    return sign * a[n - 1][n - 1]


def _det_field(a: List[List[Scalar]], field: Field) -> Scalar:
    """Gaussian elimination with exact division, pivoting on the first nonzero entry"""
    n = len(a)
    det = field.one()
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if a[i][k]), None)
        if pivot_row is None:
            return field.zero()
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            det = -det
        pivot = a[k][k]
        det = det * pivot
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            if not row_i[k]:
                continue
            factor = row_i[k] / pivot
            for j in range(k + 1, n):
                row_i[j] = row_i[j] - factor * row_k[j]
    return det


def _det_mod_p(a: List[List[int]], p: int) -> int:
    """Determinant of an integer matrix modulo p"""
    a = [[x % p for x in row] for row in a]
    n = len(a)
    det = 1
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if a[i][k]), None)
        if pivot_row is None:
            return 0
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            det = -det
        pivot = a[k][k]
        det = det * pivot % p
        inv = int(gmpy2.invert(pivot, p))
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            if not row_i[k]:
                continue
            factor = row_i[k] * inv % p
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] - factor * row_k[j]) % p
    return det % p


def clear_denominators(M: DenseMatrix) -> Tuple[DenseMatrix, int]:
    """Scale each column by the LCM of its denominators: det M = det(result) / scale"""
    if M.field != RATIONAL:
        raise FieldMismatch("Only rational matrices have denominators to clear")
    scales = [lcm(*(Fraction(e).denominator for e in M.column(j))) if M.rows else 1
              for j in range(M.cols)]
    entries = [int(Fraction(M[i, j]) * scales[j]) for i in range(M.rows) for j in range(M.cols)]
    return DenseMatrix(M.rows, M.cols, entries), prod(scales)


def det_exact(M: DenseMatrix, clear_bits: int = CLEAR_DENOMINATOR_BITS) -> Scalar:
    """
    Exact determinant.

    Integer matrices go through Bareiss; rational matrices are cleared to
    integers when every denominator fits in `clear_bits` bits and otherwise
    eliminated directly over the rationals; prime-field matrices use field
    elimination.
    """
    _require_square(M)
    if M.rows == 0:
        return M.field.one()
    if isinstance(M.field, PrimeField):
        return _det_field(M.to_rows(), M.field)
    if M.is_integer:
        return Fraction(_det_bareiss([[int(e) for e in row] for row in M.to_rows()]))
    widest = max(Fraction(e).denominator.bit_length() for e in M.entries)
    if widest <= clear_bits:
        cleared, scale = clear_denominators(M)
        return Fraction(_det_bareiss(cleared.to_rows()), scale)
    return _det_field([[Fraction(e) for e in row] for row in M.to_rows()], RATIONAL)


def hadamard_bound(M: DenseMatrix) -> int:
    """Product of the rounded-up Euclidean row norms, an upper bound on |det M|"""
    if not M.is_integer:
        raise NonIntegerMatrix("Hadamard bound needs integer entries")
    bound = 1
    for i in range(M.rows):
        squares = sum(int(e) * int(e) for e in M.row(i))
        norm = isqrt(squares)
        if norm * norm < squares:
            norm += 1
        bound *= norm
    return bound


def det_multimodular(M: DenseMatrix, rng: Optional[random.Random] = None,
                     executor: Optional[Executor] = None, bits: int = DEFAULT_PRIME_BITS) -> int:
    """
    Integer determinant from residues modulo random primes whose product
    exceeds twice the Hadamard bound, recombined in the symmetric range.
    """
    _require_square(M)
    if not M.is_integer:
        raise NonIntegerMatrix("det_multimodular needs integer entries")
    if M.rows == 0:
        return 1
    rows = [[int(e) for e in row] for row in M.to_rows()]
    bound = hadamard_bound(M)
    rng = rng or random.Random(MULTIMODULAR_SEED)

    primes: List[int] = []
    product = 1
    while product <= 2 * bound:
        p = random_prime(rng, bits)
        if p in primes:
            logger.debug(f"Resampling duplicate prime {p}")
            continue
        primes.append(p)
        product *= p
    logger.debug(f"Multimodular determinant of {M.rows}x{M.rows}: {len(primes)} primes, "
                 f"Hadamard bound of {bound.bit_length()} bits")

    if executor is None:
        residues = [_det_mod_p(rows, p) for p in primes]
    else:
        residues = list(executor.map(_det_mod_p, [rows] * len(primes), primes))
    return crt_combine(zip(residues, primes))


def cofactor(M: DenseMatrix, i: int, j: int) -> Scalar:
    _require_square(M)
    value = det_exact(minor(M, MinorSpec((i,), (j,))))
    return -value if (i + j) % 2 else value


def adjugate(M: DenseMatrix) -> DenseMatrix:
    """Classical adjugate: transpose of the cofactor matrix"""
    _require_square(M)
    n = M.rows
    return DenseMatrix(n, n, [cofactor(M, j, i) for i in range(n) for j in range(n)], M.field)


def cauchy_matrix(ks: Sequence[Scalar], ls: Sequence[Scalar], field: Field = RATIONAL) -> DenseMatrix:
    """Square matrix of 1/(l_j - k_i)"""
    if len(ks) != len(ls):
        raise ShapeError("Cauchy matrix needs as many k's as l's")
    entries = []
    for k in ks:
        for l in ls:
            gap = field(l) - field(k)
            if not gap:
                raise SingularDenominator(f"l = k = {l} in Cauchy matrix")
            entries.append(field.one() / gap)
    return DenseMatrix(len(ks), len(ls), entries, field)


def cauchy_det_closed_form(ks: Sequence[Scalar], ls: Sequence[Scalar], field: Field = RATIONAL) -> Scalar:
    """prod_{i<j} (k_i - k_j)(l_j - l_i) / prod_{i,j} (l_j - k_i)"""
    ks = [field(k) for k in ks]
    ls = [field(l) for l in ls]
    n = len(ks)
    numerator = prod(((ks[i] - ks[j]) * (ls[j] - ls[i]) for i in range(n) for j in range(i + 1, n)),
                     start=field.one())
    denominator = prod((l - k for k in ks for l in ls), start=field.one())
    return numerator / denominator
