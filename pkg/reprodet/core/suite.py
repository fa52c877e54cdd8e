"""
Identity suites over one instance, their replays over random primes and
seed-split batches of generated instances.
"""
import hashlib
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Union

from . import kernel, minors, okada, symmetric
from .exceptions import BadReduction, DegenerateMinor, InvalidSystem, ValidationError
from .generator import MAX_ATTEMPTS, generate_general, generate_symmetric
from .kernel import SextupleSystem
from .report import VerificationReport
from .scalars import DEFAULT_PRIME_BITS, PRIMALITY_ROUNDS, RATIONAL, Field, random_prime
from .symmetric import SymmetricSystem

logger = logging.getLogger(__name__)

System = Union[SextupleSystem, SymmetricSystem]

SUITES = ("kernel", "okada", "minors", "symmetric", "all")
MODES = ("general", "symmetric")
PRIME_RESAMPLES = 100


def run_kernel_suite(system: SextupleSystem, rng: random.Random) -> VerificationReport:
    report = kernel.verify_main_theorem(system)
    report.extend(kernel.verify_bordering_engine(system))
    report.extend(kernel.verify_border_independence(system, rng))
    return report


def run_okada_suite(system: SextupleSystem) -> VerificationReport:
    report = okada.verify_okada(system)
    report.extend(okada.verify_cominor_identities(system))
    try:
        report.extend(okada.big_border_representations(system))
    except DegenerateMinor as e:
        report.skip("okada.big_borders", e.detail, system.field.name)
    report.extend(okada.verify_jacobi_agreement(system))
    return report


def run_minors_suite(system: SextupleSystem) -> VerificationReport:
    """Jacobi, Sylvester and adjugate identities applied to E'"""
    layout = okada.okada_matrix(system)
    report = VerificationReport()
    name = system.field.name
    if layout.matrix.rows < 3:
        for identity in ("minors.jacobi", "minors.sylvester", "minors.adjugate"):
            report.skip(identity, "E' is 2x2; the minor identities need at least 3x3", name)
        return report
    n = system.n
    rows = (layout.u_row(n), layout.v_row(n))
    cols = (layout.left_col(n), layout.right_col(n))
    report.extend(minors.jacobi_check(layout.matrix, rows, cols))
    report.extend(minors.sylvester_bordered(layout.matrix, 2))
    report.extend(minors.adjugate_minor_check(layout.matrix, 2))
    return report


def run_symmetric_suite(system: SymmetricSystem, rng: random.Random) -> VerificationReport:
    report = symmetric.verify_reflection(system)
    report.extend(symmetric.verify_factorization(system))
    report.extend(symmetric.verify_alternating_factorizations(system))
    report.extend(symmetric.verify_lifted_main_theorem(system))
    try:
        report.extend(symmetric.verify_symmetric_big_borders(system))
    except DegenerateMinor as e:
        report.skip("symmetric.big_borders", e.detail, system.field.name)
    right = symmetric.random_free_triplet(system, rng)
    if right is None:
        report.skip("symmetric.partial_specialization", "no valid free (x, y, l) found", system.field.name)
    else:
        report.extend(symmetric.verify_partial_specialization(system, right))
    return report


def run_suite(system: System, suite: str = "all", rng: Optional[random.Random] = None) -> VerificationReport:
    """Run one suite over the system's own field"""
    if suite not in SUITES:
        raise ValidationError(f"Unknown suite '{suite}', expected one of {SUITES}")
    rng = rng or random.Random(0)
    general = symmetric.lift(system) if isinstance(system, SymmetricSystem) else system
    report = VerificationReport()
    if suite in ("kernel", "all"):
        report.extend(run_kernel_suite(general, rng))
    if suite in ("okada", "all"):
        report.extend(run_okada_suite(general))
    if suite in ("minors", "all"):
        report.extend(run_minors_suite(general))
    if suite in ("symmetric", "all"):
        if isinstance(system, SymmetricSystem):
            report.extend(run_symmetric_suite(system, rng))
        elif suite == "symmetric":
            report.skip("symmetric", "general instance; the specialization does not apply", system.field.name)
    logger.debug(f"Suite '{suite}' over {system.field.name}: {report.counts()}")
    return report


def project_with_resample(system: System, rng: random.Random, bits: int = DEFAULT_PRIME_BITS,
                          rounds: int = PRIMALITY_ROUNDS, tries: int = PRIME_RESAMPLES) -> System:
    """Project onto a random prime, drawing again when the prime divides a denominator"""
    for _ in range(tries):
        p = random_prime(rng, bits, rounds)
        try:
            return system.project(p)
        except (BadReduction, InvalidSystem) as e:
            logger.debug(f"Resampling prime {p}: {e.detail}")
    raise BadReduction(f"No usable {bits}-bit prime in {tries} draws")


def verify_instance(system: System, suite: str = "all", primes: int = 3, seed: int = 0,
                    prime_bits: int = DEFAULT_PRIME_BITS, rounds: int = PRIMALITY_ROUNDS) -> VerificationReport:
    """
    The suite over the instance's own field and, for rational instances,
    replayed over `primes` random prime fields.
    """
    if primes < 0:
        raise ValidationError(f"Prime trials must be non-negative, got {primes}")
    report = run_suite(system, suite, random.Random(f"{seed}:rational"))
    if system.field != RATIONAL:
        return report
    prime_rng = random.Random(f"{seed}:primes")
    for trial in range(primes):
        projected = project_with_resample(system, prime_rng, prime_bits, rounds)
        logger.debug(f"Prime replay {trial + 1}/{primes} over {projected.field.name}")
        report.extend(run_suite(projected, suite, random.Random(f"{seed}:prime:{trial}")))
    return report


def child_seed(master_seed: int, trial: int) -> int:
    digest = hashlib.sha256(f"{master_seed}:{trial}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass(frozen=True)
class BatchSpec:
    mode: str
    n: int
    master_seed: int
    value_range: int
    suite: str = "all"
    primes: int = 3
    prime_bits: int = DEFAULT_PRIME_BITS
    primality_rounds: int = PRIMALITY_ROUNDS
    max_attempts: int = MAX_ATTEMPTS

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValidationError(f"Unknown mode '{self.mode}', expected one of {MODES}")
        if self.suite not in SUITES:
            raise ValidationError(f"Unknown suite '{self.suite}', expected one of {SUITES}")


def generate(mode: str, n: int, seed: int, value_range: int, max_attempts: int = MAX_ATTEMPTS,
             field: Field = RATIONAL) -> System:
    """Deterministic instance for fixed arguments"""
    rng = random.Random(seed)
    if mode == "general":
        return generate_general(n, rng, value_range, max_attempts, field)
    if mode == "symmetric":
        return generate_symmetric(n, rng, value_range, max_attempts, field)
    raise ValidationError(f"Unknown mode '{mode}', expected one of {MODES}")


def run_trial(spec: BatchSpec, trial: int) -> VerificationReport:
    seed = child_seed(spec.master_seed, trial)
    system = generate(spec.mode, spec.n, seed, spec.value_range, spec.max_attempts)
    report = verify_instance(system, spec.suite, spec.primes, seed, spec.prime_bits, spec.primality_rounds)
    return report.for_trial(trial)


def run_batch(spec: BatchSpec, trials: int, jobs: int = 1) -> VerificationReport:
    """Independent trials, optionally across processes; records come back ordered by trial"""
    if trials < 1:
        raise ValidationError(f"Need at least one trial, got {trials}")
    if jobs < 1:
        raise ValidationError(f"Need at least one job, got {jobs}")
    logger.info(f"Running {trials} {spec.mode} trials at n={spec.n} with {jobs} job(s)")
    if jobs == 1:
        reports = [run_trial(spec, t) for t in range(trials)]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(run_trial, [spec] * trials, range(trials)))
    return VerificationReport.merge(reports).sorted_by_trial()
