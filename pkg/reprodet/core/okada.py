"""
The 2(n+1) x 2(n+1) moment determinant E' with rows k^r u, k^r v (left
columns) and l^r x, l^r y (right columns), its relation to the kernel
determinant, its co-minors and the big bordered displays of U, V, X, Y.
"""
import logging
from dataclasses import dataclass
from math import prod
from typing import Dict, List

from .exceptions import DegenerateMinor, ValidationError
from .kernel import Engine, SextupleSystem, border_determinants, normalized_borders
from .matrix import DenseMatrix, MinorSpec, det_exact, minor
from .minors import jacobi_sides
from .report import Stopwatch, VerificationReport
from .scalars import Scalar

logger = logging.getLogger(__name__)


def sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def sign_plus(n: int) -> int:
    """(-1)^(n(n+1)/2)"""
    return sign(n * (n + 1) // 2)


def sign_minus(n: int) -> int:
    """(-1)^(n(n-1)/2)"""
    return sign(n * (n - 1) // 2)


@dataclass(frozen=True)
class OkadaLayout:
    """
    E' together with its index map: rows 0..n hold k^r u, rows n+1..2n+1 hold
    k^r v; columns 0..n hold the left triplets, columns n+1..2n+1 the right ones.
    """
    matrix: DenseMatrix
    n: int

    def u_row(self, power: int) -> int:
        return power

    def v_row(self, power: int) -> int:
        return self.n + 1 + power

    def left_col(self, i: int) -> int:
        return i

    def right_col(self, j: int) -> int:
        return self.n + 1 + j


@dataclass(frozen=True)
class CominorSet:
    """Unsigned co-minors of E' at k^n u, k^n v, l^n x, l^n y and the double minor"""
    cal_u: Scalar
    cal_v: Scalar
    cal_x: Scalar
    cal_y: Scalar
    d_scaled: Scalar


@dataclass(frozen=True)
class _Products:
    base: Scalar
    right_gaps: Scalar
    left_gaps: Scalar
    full: Scalar


def _products(system: SextupleSystem) -> _Products:
    one = system.field.one()
    ks = [t[2] for t in system.left]
    ls = [t[2] for t in system.right]
    n = system.n
    return _Products(
        base=prod((ls[j] - ks[i] for i in range(n) for j in range(n)), start=one),
        right_gaps=prod((ls[j] - system.k for j in range(n)), start=one),
        left_gaps=prod((system.l - ks[i] for i in range(n)), start=one),
        full=prod((l - k for k in ks for l in ls), start=one),
    )


def okada_matrix(system: SextupleSystem) -> OkadaLayout:
    rows: List[List[Scalar]] = []
    for slot in (0, 1):
        for r in range(system.n + 1):
            left = [k ** r * (u, v)[slot] for u, v, k in system.left]
            right = [l ** r * (x, y)[slot] for x, y, l in system.right]
            rows.append(left + right)
    return OkadaLayout(DenseMatrix.from_rows(rows, system.field), system.n)


def scaled_kernel_det(system: SextupleSystem, engine: Engine = det_exact) -> Scalar:
    """(-1)^(n(n+1)/2) * prod_{i,j}(l_j - k_i) * D_{n+1}"""
    b = border_determinants(system, engine)
    return sign_plus(system.n) * _products(system).full * b.dn1


def verify_okada(system: SextupleSystem, engine: Engine = det_exact) -> VerificationReport:
    report = VerificationReport()
    with Stopwatch() as watch:
        lhs = engine(okada_matrix(system).matrix)
        rhs = scaled_kernel_det(system, engine)
    report.check("okada.moment_determinant", lhs, rhs, system.field.name, watch.seconds)
    return report


def cominors(system: SextupleSystem, engine: Engine = det_exact) -> CominorSet:
    layout = okada_matrix(system)
    m = layout.matrix
    n = system.n
    u_row, v_row = layout.u_row(n), layout.v_row(n)
    u_col, x_col = layout.left_col(n), layout.right_col(n)

    def unsigned(row: int, col: int) -> Scalar:
        return engine(minor(m, MinorSpec((row,), (col,))))

    return CominorSet(
        cal_u=unsigned(v_row, x_col),
        cal_v=unsigned(u_row, x_col),
        cal_x=unsigned(v_row, u_col),
        cal_y=unsigned(u_row, u_col),
        d_scaled=engine(minor(m, MinorSpec((u_row, v_row), (u_col, x_col)))),
    )


def verify_cominor_identities(system: SextupleSystem, engine: Engine = det_exact) -> VerificationReport:
    report = VerificationReport()
    name = system.field.name
    n = system.n
    with Stopwatch() as watch:
        c = cominors(system, engine)
        b = border_determinants(system, engine)
        p = _products(system)
        e = sign_plus(n) * p.full * b.dn1
    report.check("okada.cominor_identity", e * c.d_scaled,
                 c.cal_y * c.cal_u - c.cal_x * c.cal_v, name, watch.seconds)
    report.check("okada.prefactor_u", c.cal_u, sign_plus(n) * p.base * p.right_gaps * b.u_raw, name)
    report.check("okada.prefactor_v", c.cal_v, sign_minus(n) * p.base * p.right_gaps * b.v_raw, name)
    report.check("okada.prefactor_x", c.cal_x, sign_plus(n) * p.base * p.left_gaps * b.x_raw, name)
    report.check("okada.prefactor_y", c.cal_y, sign_minus(n) * p.base * p.left_gaps * b.y_raw, name)
    report.check("okada.scaled_minor", c.d_scaled, sign_minus(n) * p.base * b.dn, name)
    return report


BIG_BORDERS = ("u", "v", "x", "y")


def big_border_matrix(layout: OkadaLayout, which: str) -> DenseMatrix:
    """
    (2n+1) x (2n+1) display of U, V, X or Y: E' without the k^n v row (U, X)
    or the k^n u row (V, Y), and without the column of the distinguished
    (x, y, l) for U, V or of the distinguished (u, v, k) for X, Y.
    """
    if which not in BIG_BORDERS:
        raise ValidationError(f"Unknown border '{which}', expected one of {BIG_BORDERS}")
    n = layout.n
    size = 2 * n + 2
    drop_row = layout.v_row(n) if which in ("u", "x") else layout.u_row(n)
    drop_col = layout.right_col(n) if which in ("u", "v") else layout.left_col(n)
    return layout.matrix.select([r for r in range(size) if r != drop_row],
                                [c for c in range(size) if c != drop_col])


def _big_border_denominators(system: SextupleSystem, dn: Scalar) -> Dict[str, Scalar]:
    n = system.n
    p = _products(system)
    return {
        "u": sign_plus(n) * p.base * dn * p.right_gaps,
        "v": sign_minus(n) * p.base * dn * p.right_gaps,
        "x": sign_plus(n) * p.base * dn * p.left_gaps,
        "y": sign_minus(n) * p.base * dn * p.left_gaps,
    }


def big_border_representations(system: SextupleSystem, engine: Engine = det_exact) -> VerificationReport:
    b = border_determinants(system, engine)
    if not b.dn:
        raise DegenerateMinor(f"D_{system.n} = 0; the big border displays divide by it")
    report = VerificationReport()
    layout = okada_matrix(system)
    normalized = dict(zip(BIG_BORDERS, normalized_borders(system, engine)))
    denominators = _big_border_denominators(system, b.dn)
    for which in BIG_BORDERS:
        with Stopwatch() as watch:
            value = engine(big_border_matrix(layout, which)) / denominators[which]
        report.check(f"okada.big_{which}", value, normalized[which], system.field.name, watch.seconds)
    return report


def verify_jacobi_agreement(system: SextupleSystem, engine: Engine = det_exact) -> VerificationReport:
    """The co-minor identity read as the Jacobi identity of E' on the two k^n rows and columns"""
    report = VerificationReport()
    name = system.field.name
    if system.n == 0:
        report.skip("okada.jacobi_agreement", "E' is 2x2; Jacobi needs at least 3x3", name)
        return report
    n = system.n
    layout = okada_matrix(system)
    rows = (layout.u_row(n), layout.v_row(n))
    cols = (layout.left_col(n), layout.right_col(n))
    with Stopwatch() as watch:
        lhs, rhs = jacobi_sides(layout.matrix, rows, cols)
        c = cominors(system, engine)
        e = scaled_kernel_det(system, engine)
    report.check("okada.jacobi_agreement_lhs", lhs, e * c.d_scaled, name, watch.seconds)
    report.check("okada.jacobi_agreement_rhs", rhs, c.cal_y * c.cal_u - c.cal_x * c.cal_v, name)
    return report
