"""Classical minor identities on arbitrary square matrices"""
import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

from .exceptions import ShapeError, SizeError, ValidationError
from .matrix import DenseMatrix, MinorSpec, adjugate, det_exact, minor
from .report import Stopwatch, VerificationReport
from .scalars import Scalar

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BorderedSpec:
    """Split of an n x n matrix into a k x k corner and its (n-k) x (n-k) complement"""
    kdim: int
    size: int

    def __post_init__(self):
        if not 2 <= self.kdim < self.size:
            raise SizeError(f"Need 2 <= k < n, got k = {self.kdim}, n = {self.size}")

    @property
    def tail(self) -> Tuple[int, ...]:
        return tuple(range(self.kdim, self.size))


def _square(M: DenseMatrix) -> None:
    if not M.is_square:
        raise ShapeError(f"Expected a square matrix, got {M.rows}x{M.cols}")


def _pair(indices: Sequence[int], what: str) -> Tuple[int, int]:
    pair = tuple(sorted(indices))
    if len(pair) != 2 or pair[0] == pair[1]:
        raise ValidationError(f"Jacobi identity needs two distinct {what}, got {tuple(indices)}")
    return pair


def jacobi_sides(M: DenseMatrix, rows: Sequence[int], cols: Sequence[int]) -> Tuple[Scalar, Scalar]:
    """
    (E * D, M_r1c1 M_r2c2 - M_r1c2 M_r2c1) where E = det M, D is the minor with
    both rows and both columns removed and M_rc the one-row one-column minors.
    Pairs are sorted first; the identity is sign-exact only in that order.
    """
    _square(M)
    r1, r2 = _pair(rows, "rows")
    c1, c2 = _pair(cols, "columns")

    def one_minor(r: int, c: int) -> Scalar:
        return det_exact(minor(M, MinorSpec((r,), (c,))))

    e = det_exact(M)
    d = det_exact(minor(M, MinorSpec((r1, r2), (c1, c2))))
    rhs = one_minor(r1, c1) * one_minor(r2, c2) - one_minor(r1, c2) * one_minor(r2, c1)
    return e * d, rhs


def jacobi_check(M: DenseMatrix, rows: Sequence[int], cols: Sequence[int]) -> VerificationReport:
    _square(M)
    if M.rows < 3:
        raise SizeError(f"Jacobi identity needs n >= 3, got {M.rows}")
    report = VerificationReport()
    with Stopwatch() as watch:
        lhs, rhs = jacobi_sides(M, rows, cols)
    report.check("minors.jacobi", lhs, rhs, M.field.name, watch.seconds)
    return report


def sylvester_bordered(M: DenseMatrix, kdim: int) -> VerificationReport:
    """det [g_ij] = F^(k-1) E, g_ij the corner-bordered minors of the complement F"""
    _square(M)
    spec = BorderedSpec(kdim, M.rows)
    report = VerificationReport()
    with Stopwatch() as watch:
        f = det_exact(M.select(spec.tail, spec.tail))
        g = [det_exact(M.select((i,) + spec.tail, (j,) + spec.tail))
             for i in range(kdim) for j in range(kdim)]
        lhs = det_exact(DenseMatrix(kdim, kdim, g, M.field))
        rhs = f ** (kdim - 1) * det_exact(M)
    report.check("minors.sylvester", lhs, rhs, M.field.name, watch.seconds, f=f)
    return report


def adjugate_minor_check(M: DenseMatrix, kdim: int) -> VerificationReport:
    """Leading k x k minor of adj M equals F E^(k-1), F the trailing complement"""
    _square(M)
    spec = BorderedSpec(kdim, M.rows)
    report = VerificationReport()
    with Stopwatch() as watch:
        e = det_exact(M)
        f = det_exact(M.select(spec.tail, spec.tail))
        lhs = det_exact(adjugate(M).select(range(kdim), range(kdim)))
        rhs = f * e ** (kdim - 1)
    report.check("minors.adjugate", lhs, rhs, M.field.name, watch.seconds, e=e, f=f)
    return report
