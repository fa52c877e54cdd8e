import argparse
import logging
import sys
from fractions import Fraction
from functools import wraps
from pathlib import Path
from typing import Callable, Dict, Optional, TextIO, Union

from pydantic import BaseModel, ValidationError as PydanticValidationError

from ..config import Settings
from ..core.bench import format_table, run_bench
from ..core.exceptions import (
    EXIT_IDENTITY_FAILED,
    EXIT_INTERNAL,
    EXIT_INVALID_INPUT,
    EXIT_OK,
    FieldMismatch,
    InstanceFileError,
    ReprodetError,
)
from ..core.kernel import SextupleSystem, det_by_bordering, kernel_matrix
from ..core.matrix import clear_denominators, det_exact, det_laplace, det_multimodular
from ..core.report import VerificationReport
from ..core.scalars import RATIONAL, field_from_spec, format_scalar
from ..core.suite import BatchSpec, generate, run_batch, verify_instance
from ..core.symmetric import SymmetricSystem, lift
from ..utils.validators import parse_int_list
from .schemas import (
    BatchRequest,
    BenchRequest,
    BenchResponse,
    BenchRowResponse,
    CommandResponse,
    ErrorResponse,
    GenRequest,
    InstanceFile,
    VerifyRequest,
)

logger = logging.getLogger(__name__)

DET_ENGINES = ("exact", "laplace", "multimodular", "bordering")

Command = Callable[[argparse.Namespace, Settings], int]


def emit(payload: BaseModel, stream: Optional[TextIO] = None) -> None:
    print(payload.json(indent=2), file=stream or sys.stdout)


def handle_errors(f: Command) -> Command:
    """Map exceptions to an error payload on stderr and a process exit code"""
    @wraps(f)
    def decorated_function(*args, **kwargs) -> int:
        try:
            return f(*args, **kwargs)
        except PydanticValidationError as e:
            logger.error(f"Validation error: {e}")
            emit(ErrorResponse(
                error="validation_error",
                detail=str(e),
                exit_code=EXIT_INVALID_INPUT
            ), sys.stderr)
            return EXIT_INVALID_INPUT
        except ReprodetError as e:
            logger.error(f"{type(e).__name__}: {e.detail}")
            emit(ErrorResponse(**e.to_dict()), sys.stderr)
            return e.exit_code
        except Exception as e:
            logger.error(f"Unexpected error: {e}", exc_info=True)
            emit(ErrorResponse(
                error="internal_error",
                detail=str(e),
                exit_code=EXIT_INTERNAL
            ), sys.stderr)
            return EXIT_INTERNAL
    return decorated_function


def load_instance(path: Union[str, Path]) -> InstanceFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise InstanceFileError(f"Cannot read instance file {path}: {e}")
    return InstanceFile.parse_raw(text)


def general_form(system: Union[SextupleSystem, SymmetricSystem]) -> SextupleSystem:
    return lift(system) if isinstance(system, SymmetricSystem) else system


def check_stored(instance: InstanceFile, system: Union[SextupleSystem, SymmetricSystem]) -> VerificationReport:
    """Compare the stored kernel and determinant, if any, with recomputation"""
    report = VerificationReport()
    general = general_form(system)
    name = general.field.name
    kernel = kernel_matrix(general, general.n + 1)

    stored = instance.stored_kernel()
    if stored is not None:
        mismatch = next(((i, j) for i in range(kernel.rows) for j in range(kernel.cols)
                         if stored[i][j] != kernel[i, j]), None)
        witness = {}
        if mismatch is not None:
            i, j = mismatch
            witness = {"row": str(i), "col": str(j), "stored": instance.kernel[i][j],
                       "recomputed": format_scalar(kernel[i, j])}
        report.confirm("instance.stored_kernel", mismatch is None, name, **witness)

    stored_det = instance.stored_det()
    if stored_det is not None:
        report.check("instance.stored_det", stored_det, det_exact(kernel), name)
    return report


@handle_errors
def gen_command(args: argparse.Namespace, settings: Settings) -> int:
    """Generate one instance file"""
    req = GenRequest(
        mode=args.mode,
        n=args.n,
        seed=args.seed,
        value_range=args.range if args.range is not None else settings.generator.range,
        field_spec=args.field,
        max_attempts=settings.generator.max_attempts
    )
    system = generate(req.mode, req.n, req.seed, req.value_range, req.max_attempts,
                      field_from_spec(req.field_spec))
    text = InstanceFile.from_system(system, seed=req.seed, value_range=req.value_range).dumps()

    if args.output:
        try:
            Path(args.output).write_text(text, encoding="utf-8")
        except OSError as e:
            raise InstanceFileError(f"Cannot write instance file {args.output}: {e}")
        logger.info(f"Wrote {req.mode} instance n={req.n} seed={req.seed} to {args.output}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


@handle_errors
def verify_command(args: argparse.Namespace, settings: Settings) -> int:
    """Run an identity suite on an instance file"""
    req = VerifyRequest(
        suite=args.suite,
        primes=args.primes if args.primes is not None else settings.verify.primes
    )
    instance = load_instance(args.file)
    system = instance.to_system()
    logger.info(f"Verifying {args.file}: {instance.mode} n={instance.n} over {system.field.name}")

    report = check_stored(instance, system)
    report.extend(verify_instance(
        system,
        req.suite,
        req.primes,
        seed=instance.seed or 0,
        prime_bits=settings.verify.prime_bits,
        rounds=settings.verify.primality_rounds
    ))

    counts = report.counts()
    emit(CommandResponse(
        success=report.passed,
        message=f"{counts['pass']} passed, {counts['fail']} failed, {counts['skipped']} skipped",
        data=report.to_dict()
    ))
    return EXIT_OK if report.passed else EXIT_IDENTITY_FAILED


@handle_errors
def det_command(args: argparse.Namespace, settings: Settings) -> int:
    """Print D_{n+1} of an instance as "p/q" """
    instance = load_instance(args.file)
    general = general_form(instance.to_system())
    kernel = kernel_matrix(general, general.n + 1)

    if args.engine == "laplace":
        value = det_laplace(kernel, settings.verify.laplace_max_size)
    elif args.engine == "multimodular":
        if kernel.field != RATIONAL:
            raise FieldMismatch("The multimodular engine works on rational instances only")
        cleared, scale = clear_denominators(kernel)
        value = Fraction(det_multimodular(cleared, bits=settings.verify.prime_bits), scale)
    elif args.engine == "bordering":
        value = det_by_bordering(general)
    else:
        value = det_exact(kernel, settings.verify.clear_denominator_bits)

    print(format_scalar(value))
    return EXIT_OK


@handle_errors
def bench_command(args: argparse.Namespace, settings: Settings) -> int:
    """Time the determinant engines on a deterministic instance set"""
    req = BenchRequest(
        sizes=parse_int_list(args.sizes) if args.sizes else settings.bench.sizes,
        reps=args.reps if args.reps is not None else settings.bench.reps,
        seed=args.seed if args.seed is not None else settings.bench.seed
    )
    rows = run_bench(
        req.sizes,
        req.reps,
        req.seed,
        value_range=settings.generator.range,
        max_size=settings.bench.max_size,
        prime_bits=settings.verify.prime_bits,
        max_attempts=settings.generator.max_attempts
    )
    print(format_table(rows, header=f"median seconds over {req.reps} reps, seed {req.seed}"))

    if args.json:
        table = BenchResponse(
            seed=req.seed,
            reps=req.reps,
            rows=[BenchRowResponse(**row.to_dict()) for row in rows]
        )
        try:
            Path(args.json).write_text(table.json(indent=2) + "\n", encoding="utf-8")
        except OSError as e:
            raise InstanceFileError(f"Cannot write benchmark table {args.json}: {e}")
    return EXIT_OK


@handle_errors
def batch_command(args: argparse.Namespace, settings: Settings) -> int:
    """Verify generated instances from a master seed"""
    req = BatchRequest(
        mode=args.mode,
        n=args.n,
        seed=args.seed,
        trials=args.trials,
        suite=args.suite,
        primes=args.primes if args.primes is not None else settings.verify.primes,
        jobs=args.jobs if args.jobs is not None else settings.verify.jobs
    )
    spec = BatchSpec(
        mode=req.mode,
        n=req.n,
        master_seed=req.seed,
        value_range=args.range if args.range is not None else settings.generator.range,
        suite=req.suite,
        primes=req.primes,
        prime_bits=settings.verify.prime_bits,
        primality_rounds=settings.verify.primality_rounds,
        max_attempts=settings.generator.max_attempts
    )
    report = run_batch(spec, req.trials, req.jobs)

    counts = report.counts()
    emit(CommandResponse(
        success=report.passed,
        message=f"{req.trials} trials: {counts['pass']} passed, {counts['fail']} failed, "
                f"{counts['skipped']} skipped",
        data=report.to_dict()
    ))
    return EXIT_OK if report.passed else EXIT_IDENTITY_FAILED


COMMANDS: Dict[str, Command] = {
    "gen": gen_command,
    "verify": verify_command,
    "det": det_command,
    "bench": bench_command,
    "batch": batch_command,
}
