"""
Factorizing specialization x_i = u_i, y_i = -v_i, l_i = -k_i.

The lifted kernel is symmetric with entries (u_i v_j + u_j v_i) / (k_i + k_j)
and D_{n+1} D_n k = U V. The factor determinants have rows alternating
between k^r u and k^r v.
"""
import logging
import random
from dataclasses import dataclass
from enum import Enum
from math import prod
from typing import Optional, Sequence, Tuple

from .exceptions import DegenerateMinor, InvalidSystem, SizeError
from .kernel import (
    Engine,
    SextupleSystem,
    Triplet,
    coerce_triplets,
    border_determinants,
    kernel_matrix,
    verify_main_theorem,
)
from .matrix import DenseMatrix, det_exact
from .okada import big_border_matrix, okada_matrix, sign_minus, sign_plus
from .report import Stopwatch, VerificationReport
from .scalars import RATIONAL, Field, Scalar, prime_field

logger = logging.getLogger(__name__)


class Variant(str, Enum):
    U_LED = "u-led"
    V_LED = "v-led"


@dataclass(frozen=True)
class SymmetricSystem:
    """n+1 triplets (u_i, v_i, k_i); the right triplets are their reflections"""
    triplets: Tuple[Triplet, ...]
    field: Field = RATIONAL

    def __post_init__(self):
        triplets = coerce_triplets(self.triplets, self.field, "symmetric")
        if not triplets:
            raise InvalidSystem("Need at least one triplet")
        ks = [t[2] for t in triplets]
        for i, ki in enumerate(ks):
            for j, kj in enumerate(ks):
                if not ki + kj:
                    raise InvalidSystem(f"k_{i + 1} + k_{j + 1} = 0")
        if len(set(ks)) != len(ks):
            raise InvalidSystem("k values must be pairwise distinct")
        object.__setattr__(self, "triplets", triplets)

    @property
    def n(self) -> int:
        return len(self.triplets) - 1

    @property
    def u(self) -> Scalar:
        return self.triplets[-1][0]

    @property
    def v(self) -> Scalar:
        return self.triplets[-1][1]

    @property
    def k(self) -> Scalar:
        return self.triplets[-1][2]

    def project(self, p: int) -> "SymmetricSystem":
        return SymmetricSystem(self.triplets, prime_field(p))


def reflect(triplet: Sequence[Scalar]) -> Triplet:
    u, v, k = triplet
    return u, -v, -k


def lift(system: SymmetricSystem) -> SextupleSystem:
    return SextupleSystem(system.triplets, tuple(reflect(t) for t in system.triplets), system.field)


def _pair_sums(ks: Sequence[Scalar], one: Scalar) -> Scalar:
    # ordered double product over (i, j), diagonal included
    return prod((ki + kj for ki in ks for kj in ks), start=one)


def verify_reflection(system: SymmetricSystem, engine: Engine = det_exact) -> VerificationReport:
    """X at the reflected arguments is U, Y there is -V; the lifted kernel is symmetric"""
    report = VerificationReport()
    name = system.field.name
    lifted = lift(system)
    with Stopwatch() as watch:
        b = border_determinants(lifted, engine)
    report.check("symmetric.reflection_x", b.x_raw, b.u_raw, name, watch.seconds)
    report.check("symmetric.reflection_y", b.y_raw, -b.v_raw, name, watch.seconds)

    with Stopwatch() as watch:
        kernel = kernel_matrix(lifted, lifted.n + 1)
        asymmetric = next(((i, j) for i in range(kernel.rows) for j in range(i + 1, kernel.cols)
                           if kernel[i, j] != kernel[j, i]), None)
    witness = {} if asymmetric is None else {"row": str(asymmetric[0]), "col": str(asymmetric[1])}
    report.confirm("symmetric.kernel_symmetric", asymmetric is None, name, watch.seconds, **witness)
    return report


def verify_factorization(system: SymmetricSystem, engine: Engine = det_exact) -> VerificationReport:
    """D_{n+1} D_n k = U_raw V_raw"""
    report = VerificationReport()
    with Stopwatch() as watch:
        b = border_determinants(lift(system), engine)
        lhs = b.dn1 * b.dn * system.k
        rhs = b.u_raw * b.v_raw
    report.check("symmetric.factorization", lhs, rhs, system.field.name, watch.seconds,
                 dn=b.dn, dn1=b.dn1, u_raw=b.u_raw, v_raw=b.v_raw)
    return report


def alternating_matrix(system: SymmetricSystem, variant: Variant, m: int) -> DenseMatrix:
    """Rows k_j^r u_j and k_j^r v_j alternating, starting with u (u-led) or v (v-led)"""
    variant = Variant(variant)
    if m not in (system.n, system.n + 1):
        raise SizeError(f"Alternating matrix size must be n = {system.n} or n+1 = {system.n + 1}, got {m}")
    rows = []
    for r in range(m):
        use_u = (r % 2 == 0) == (variant is Variant.U_LED)
        rows.append([k ** r * (u if use_u else v) for u, v, k in system.triplets[:m]])
    return DenseMatrix(m, m, [e for row in rows for e in row], system.field)


def verify_alternating_factorizations(system: SymmetricSystem,
                                      engine: Engine = det_exact) -> VerificationReport:
    """
    D_{n+1} and D_n as 2^m det(u-led) det(v-led) / prod(k_i + k_j), the
    parity-dependent quotients giving U_n and V_n, and the split displays of
    U_n and V_n, all in division-free form.
    """
    report = VerificationReport()
    name = system.field.name
    n = system.n
    one = system.field.one()
    ks = [t[2] for t in system.triplets]
    even = n % 2 == 0

    with Stopwatch() as watch:
        b = border_determinants(lift(system), engine)
        au1 = engine(alternating_matrix(system, Variant.U_LED, n + 1))
        av1 = engine(alternating_matrix(system, Variant.V_LED, n + 1))
        au0 = engine(alternating_matrix(system, Variant.U_LED, n))
        av0 = engine(alternating_matrix(system, Variant.V_LED, n))
        full = _pair_sums(ks, one)
        base = _pair_sums(ks[:n], one)
        tail = prod((system.k + kj for kj in ks[:n]), start=one)
    report.check("symmetric.dn1_factorization", b.dn1 * full, 2 ** (n + 1) * au1 * av1, name, watch.seconds)
    report.check("symmetric.dn_factorization", b.dn * base, 2 ** n * au0 * av0, name, watch.seconds)

    if not b.dn:
        reason = f"D_{n} = 0; U_{n} and V_{n} are undefined"
        logger.warning(f"Skipping parity quotients: {reason}")
        report.skip("symmetric.u_led_quotient", reason, name)
        report.skip("symmetric.v_led_quotient", reason, name)
    else:
        u_led_target, v_led_target = (b.u_raw, b.v_raw) if even else (b.v_raw, b.u_raw)
        report.check("symmetric.u_led_quotient", au1 * b.dn, u_led_target * au0 * tail, name)
        report.check("symmetric.v_led_quotient", av1 * b.dn, v_led_target * av0 * tail, name)

    # raw split displays: U_raw * base * tail = 2^n * (product of two factor determinants)
    u_split, v_split = (au1 * av0, au0 * av1) if even else (au0 * av1, au1 * av0)
    report.check("symmetric.split_u", b.u_raw * base * tail, 2 ** n * u_split, name)
    report.check("symmetric.split_v", b.v_raw * base * tail, 2 ** n * v_split, name)
    return report


def verify_partial_specialization(system: SymmetricSystem, right: Sequence[Scalar],
                                  engine: Engine = det_exact) -> VerificationReport:
    """
    Only the n base pairs are specialized; the distinguished (x, y, l) stays free:
    D_{n+1} D_n (k - l) = U(u,v,k) V(x,-y,-l) + V(u,v,k) U(x,-y,-l).
    """
    report = VerificationReport()
    field = system.field
    x, y, l = (field(value) for value in right)
    base = system.triplets[:-1]
    mirrored_base = tuple(reflect(t) for t in base)
    general = SextupleSystem(system.triplets, mirrored_base + ((x, y, l),), field)
    swapped = SextupleSystem(base + ((x, -y, -l),), mirrored_base + (reflect(system.triplets[-1]),), field)
    with Stopwatch() as watch:
        b = border_determinants(general, engine)
        s = border_determinants(swapped, engine)
        lhs = b.dn1 * b.dn * (system.k - l)
        rhs = b.u_raw * s.v_raw + b.v_raw * s.u_raw
    report.check("symmetric.partial_specialization", lhs, rhs, field.name, watch.seconds)
    return report


def random_free_triplet(system: SymmetricSystem, rng: random.Random, spread: int = 20,
                        attempts: int = 100) -> Optional[Triplet]:
    """A right triplet (x, y, l) keeping both systems of the partial specialization valid"""
    field = system.field
    base = system.triplets[:-1]
    mirrored_base = tuple(reflect(t) for t in base)
    for _ in range(attempts):
        candidate = tuple(field(rng.randint(-spread, spread)) for _ in range(3))
        try:
            SextupleSystem(system.triplets, mirrored_base + (candidate,), field)
        except InvalidSystem:
            continue
        return candidate
    return None


def verify_symmetric_big_borders(system: SymmetricSystem, engine: Engine = det_exact) -> VerificationReport:
    """The (2n+1) x (2n+1) displays of U_n and V_n after specialization"""
    lifted = lift(system)
    b = border_determinants(lifted, engine)
    if not b.dn:
        raise DegenerateMinor(f"D_{system.n} = 0; the big border displays divide by it")
    n = system.n
    one = system.field.one()
    ks = [t[2] for t in system.triplets]
    products = _pair_sums(ks[:n], one) * prod((system.k + kj for kj in ks[:n]), start=one)
    layout = okada_matrix(lifted)
    report = VerificationReport()
    for which, sgn, raw in (("u", sign_plus(n), b.u_raw), ("v", sign_minus(n), b.v_raw)):
        with Stopwatch() as watch:
            value = engine(big_border_matrix(layout, which)) / (sgn * b.dn * products)
        report.check(f"symmetric.big_{which}", value, raw / b.dn, system.field.name, watch.seconds)
    return report


def verify_lifted_main_theorem(system: SymmetricSystem, engine: Engine = det_exact) -> VerificationReport:
    """The general reproducing identity on the lifted system, where l - k becomes -2k"""
    report = verify_main_theorem(lift(system), engine)
    for record in report.records:
        record.identity = "symmetric.lifted_main_theorem"
    return report
