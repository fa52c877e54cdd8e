"""
Kernel determinants built from entries (y_j u_i - x_j v_i) / (l_j - k_i),
their bordered functions U, V, X, Y and the reproducing identity

    D_{n+1} * D_n * (l - k) = Y U - X V

checked in raw (division-free) form so that D_n = 0 instances stay testable.
"""
import logging
import random
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

from .exceptions import (
    DegenerateChain,
    DegenerateMinor,
    InvalidSystem,
    MinorIndexError,
    SingularDenominator,
    SizeError,
)
from .matrix import DenseMatrix, det_exact
from .report import Stopwatch, VerificationReport
from .scalars import RATIONAL, Field, Scalar, prime_field

logger = logging.getLogger(__name__)

Triplet = Tuple[Scalar, Scalar, Scalar]
Engine = Callable[[DenseMatrix], Scalar]


def coerce_triplets(triplets: Sequence[Sequence[Scalar]], field: Field, side: str) -> Tuple[Triplet, ...]:
    result = []
    for index, triplet in enumerate(triplets):
        if len(triplet) != 3:
            raise InvalidSystem(f"{side} triplet {index} has {len(triplet)} values, expected 3")
        result.append(tuple(field(value) for value in triplet))
    return tuple(result)


@dataclass(frozen=True)
class SextupleSystem:
    """
    The 6(n+1) parameters of one kernel instance: left triplets (u_i, v_i, k_i)
    and right triplets (x_j, y_j, l_j); the last pair is the distinguished one.
    """
    left: Tuple[Triplet, ...]
    right: Tuple[Triplet, ...]
    field: Field = RATIONAL

    def __post_init__(self):
        left = coerce_triplets(self.left, self.field, "left")
        right = coerce_triplets(self.right, self.field, "right")
        if not left or len(left) != len(right):
            raise InvalidSystem(f"Need n+1 >= 1 left and right triplets, got {len(left)} and {len(right)}")
        ks = [t[2] for t in left]
        ls = [t[2] for t in right]
        for i, k in enumerate(ks):
            for j, l in enumerate(ls):
                if l == k:
                    raise InvalidSystem(f"l_{j + 1} = k_{i + 1} = {l}: kernel denominator vanishes")
        if len(set(ks)) != len(ks):
            raise InvalidSystem("k values must be pairwise distinct")
        if len(set(ls)) != len(ls):
            raise InvalidSystem("l values must be pairwise distinct")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @property
    def n(self) -> int:
        return len(self.left) - 1

    @property
    def u(self) -> Scalar:
        return self.left[-1][0]

    @property
    def v(self) -> Scalar:
        return self.left[-1][1]

    @property
    def k(self) -> Scalar:
        return self.left[-1][2]

    @property
    def x(self) -> Scalar:
        return self.right[-1][0]

    @property
    def y(self) -> Scalar:
        return self.right[-1][1]

    @property
    def l(self) -> Scalar:
        return self.right[-1][2]

    def leading(self, m: int) -> "SextupleSystem":
        """System made of the first m pairs"""
        if not 1 <= m <= self.n + 1:
            raise SizeError(f"Leading system of {m} pairs from a system of {self.n + 1}")
        return SextupleSystem(self.left[:m], self.right[:m], self.field)

    def replace_left_last(self, triplet: Sequence[Scalar]) -> "SextupleSystem":
        return SextupleSystem(self.left[:-1] + (tuple(triplet),), self.right, self.field)

    def replace_right_last(self, triplet: Sequence[Scalar]) -> "SextupleSystem":
        return SextupleSystem(self.left, self.right[:-1] + (tuple(triplet),), self.field)

    def project(self, p: int) -> "SextupleSystem":
        """Same system over Z/pZ; raises BadReduction or InvalidSystem when p is unlucky"""
        return SextupleSystem(self.left, self.right, prime_field(p))


@dataclass(frozen=True)
class BorderSet:
    """Raw bordered determinants (D_n times U_n, V_n, X_n, Y_n) with D_n and D_{n+1}"""
    u_raw: Scalar
    v_raw: Scalar
    x_raw: Scalar
    y_raw: Scalar
    dn: Scalar
    dn1: Scalar


def kernel_entry(system: SextupleSystem, i: int, j: int) -> Scalar:
    """(y_j u_i - x_j v_i) / (l_j - k_i), indices 0-based"""
    if not (0 <= i <= system.n and 0 <= j <= system.n):
        raise MinorIndexError(f"Kernel entry ({i}, {j}) outside a system with n = {system.n}")
    u, v, k = system.left[i]
    x, y, l = system.right[j]
    gap = l - k
    if not gap:
        raise SingularDenominator(f"l_{j + 1} - k_{i + 1} vanishes")
    return (y * u - x * v) / gap


def kernel_matrix(system: SextupleSystem, m: int) -> DenseMatrix:
    """m x m kernel over the first m pairs, m in {n, n+1}"""
    if m not in (system.n, system.n + 1):
        raise SizeError(f"Kernel size must be n = {system.n} or n+1 = {system.n + 1}, got {m}")
    entries = [kernel_entry(system, i, j) for i in range(m) for j in range(m)]
    return DenseMatrix(m, m, entries, system.field)


def _raw_borders(system: SextupleSystem, engine: Engine,
                 kernel: Optional[DenseMatrix] = None) -> Tuple[Scalar, Scalar, Scalar, Scalar]:
    # U/V replace the last column by u_i (v_i); X/Y replace the last row by x_j (y_j)
    kernel = kernel if kernel is not None else kernel_matrix(system, system.n + 1)
    last = system.n
    u_raw = engine(kernel.with_column(last, [t[0] for t in system.left]))
    v_raw = engine(kernel.with_column(last, [t[1] for t in system.left]))
    x_raw = engine(kernel.with_row(last, [t[0] for t in system.right]))
    y_raw = engine(kernel.with_row(last, [t[1] for t in system.right]))
    return u_raw, v_raw, x_raw, y_raw


def border_determinants(system: SextupleSystem, engine: Engine = det_exact) -> BorderSet:
    kernel = kernel_matrix(system, system.n + 1)
    u_raw, v_raw, x_raw, y_raw = _raw_borders(system, engine, kernel)
    dn = engine(kernel.select(range(system.n), range(system.n)))
    return BorderSet(u_raw, v_raw, x_raw, y_raw, dn, engine(kernel))


def normalized_borders(system: SextupleSystem,
                       engine: Engine = det_exact) -> Tuple[Scalar, Scalar, Scalar, Scalar]:
    """(U_n, V_n, X_n, Y_n): raw borders divided by D_n"""
    borders = border_determinants(system, engine)
    if not borders.dn:
        raise DegenerateMinor(f"D_{system.n} = 0; U, V, X, Y are undefined")
    dn = borders.dn
    return borders.u_raw / dn, borders.v_raw / dn, borders.x_raw / dn, borders.y_raw / dn


def verify_main_theorem(system: SextupleSystem, engine: Engine = det_exact) -> VerificationReport:
    report = VerificationReport()
    with Stopwatch() as watch:
        b = border_determinants(system, engine)
        lhs = b.dn1 * b.dn * (system.l - system.k)
        rhs = b.y_raw * b.u_raw - b.x_raw * b.v_raw
    report.check("kernel.main_theorem", lhs, rhs, system.field.name, watch.seconds,
                 dn=b.dn, dn1=b.dn1, u_raw=b.u_raw, v_raw=b.v_raw, x_raw=b.x_raw, y_raw=b.y_raw)
    return report


def det_by_bordering(system: SextupleSystem, engine: Engine = det_exact) -> Scalar:
    """
    D_{n+1} through the recursion D_{m+1} = (Y U - X V) / (D_m (l_{m+1} - k_{m+1}))
    over the leading systems, using only bordered determinants of size m+1.
    """
    d_prev = system.field.one()
    for m in range(system.n + 1):
        if not d_prev:
            raise DegenerateChain(f"Leading minor D_{m} vanishes")
        sub = system.leading(m + 1)
        u_raw, v_raw, x_raw, y_raw = _raw_borders(sub, engine)
        d_prev = (y_raw * u_raw - x_raw * v_raw) / (d_prev * (sub.l - sub.k))
    return d_prev


def verify_bordering_engine(system: SextupleSystem, engine: Engine = det_exact) -> VerificationReport:
    report = VerificationReport()
    with Stopwatch() as watch:
        try:
            bordered = det_by_bordering(system, engine)
        except DegenerateChain as e:
            logger.warning(f"Bordering recursion unavailable: {e.detail}")
            report.skip("kernel.det_by_bordering", e.detail, system.field.name)
            return report
        direct = engine(kernel_matrix(system, system.n + 1))
    report.check("kernel.det_by_bordering", bordered, direct, system.field.name, watch.seconds)
    return report


def _perturbed(system: SextupleSystem, side: str, rng: random.Random,
               spread: int, attempts: int) -> Optional[SextupleSystem]:
    replace = system.replace_right_last if side == "right" else system.replace_left_last
    current = system.right[-1] if side == "right" else system.left[-1]
    for _ in range(attempts):
        triplet = tuple(system.field(rng.randint(-spread, spread)) for _ in range(3))
        if triplet == current:
            continue
        try:
            return replace(triplet)
        except InvalidSystem:
            continue
    return None


def verify_border_independence(system: SextupleSystem, rng: Optional[random.Random] = None,
                               engine: Engine = det_exact, spread: int = 20,
                               attempts: int = 100) -> VerificationReport:
    """U, V must not see (x, y, l); X, Y must not see (u, v, k)"""
    rng = rng or random.Random(0)
    report = VerificationReport()
    name = system.field.name
    base = _raw_borders(system, engine)

    with Stopwatch() as watch:
        moved_right = _perturbed(system, "right", rng, spread, attempts)
        after = _raw_borders(moved_right, engine) if moved_right is not None else None
    if after is None:
        report.skip("kernel.u_independent_of_xyl", "no valid perturbation of (x, y, l)", name)
        report.skip("kernel.v_independent_of_xyl", "no valid perturbation of (x, y, l)", name)
    else:
        report.check("kernel.u_independent_of_xyl", after[0], base[0], name, watch.seconds)
        report.check("kernel.v_independent_of_xyl", after[1], base[1], name, watch.seconds)

    with Stopwatch() as watch:
        moved_left = _perturbed(system, "left", rng, spread, attempts)
        after = _raw_borders(moved_left, engine) if moved_left is not None else None
    if after is None:
        report.skip("kernel.x_independent_of_uvk", "no valid perturbation of (u, v, k)", name)
        report.skip("kernel.y_independent_of_uvk", "no valid perturbation of (u, v, k)", name)
    else:
        report.check("kernel.x_independent_of_uvk", after[2], base[2], name, watch.seconds)
        report.check("kernel.y_independent_of_uvk", after[3], base[3], name, watch.seconds)
    return report
