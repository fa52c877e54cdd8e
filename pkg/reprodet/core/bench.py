"""Median wall-time comparison of the determinant engines on identical instances"""
import logging
import random
import time
from dataclasses import asdict, dataclass
from statistics import median
from typing import Any, Callable, Dict, List, Optional, Sequence

from .exceptions import DegenerateChain, SizeError, ValidationError
from .generator import MAX_ATTEMPTS, generate_general
from .kernel import det_by_bordering, kernel_matrix, verify_main_theorem
from .matrix import clear_denominators, det_exact, det_multimodular
from .scalars import DEFAULT_PRIME_BITS
from .suite import project_with_resample

logger = logging.getLogger(__name__)

ENGINES = ("det_exact", "det_multimodular", "prime_verify", "det_by_bordering")


@dataclass
class BenchRow:
    n: int
    det_exact: float
    det_multimodular: float
    prime_verify: float
    det_by_bordering: float
    bordering_fallback: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _median_seconds(fn: Callable[[], Any], reps: int) -> float:
    timings = []
    for _ in range(reps):
        start = time.perf_counter()
        fn()
        timings.append(time.perf_counter() - start)
    return median(timings)


def run_bench(sizes: Sequence[int], reps: int = 5, seed: int = 0, value_range: int = 20,
              max_size: int = 24, prime_bits: int = DEFAULT_PRIME_BITS,
              max_attempts: int = MAX_ATTEMPTS) -> List[BenchRow]:
    """
    One generated system per n (seeded from `seed` and n), kernel of size n+1.
    det_by_bordering falls back to det_exact when a leading minor vanishes.
    """
    if reps < 1:
        raise ValidationError(f"Need at least one repetition, got {reps}")
    rows = []
    for n in sizes:
        if not 0 <= n <= max_size:
            raise SizeError(f"Benchmark size {n} outside [0, {max_size}]")
        rng = random.Random(f"{seed}:{n}")
        # 2n+2 distinct k's and l's must fit in the range
        system = generate_general(n, rng, max(value_range, 2 * n + 2), max_attempts)
        kernel = kernel_matrix(system, n + 1)
        cleared, _ = clear_denominators(kernel)
        projected = project_with_resample(system, rng, prime_bits)

        fallback = False
        try:
            det_by_bordering(system)
            bordering: Callable[[], Any] = lambda: det_by_bordering(system)
        except DegenerateChain as e:
            logger.warning(f"n={n}: {e.detail}; timing det_exact instead")
            fallback = True
            bordering = lambda: det_exact(kernel)

        row = BenchRow(
            n=n,
            det_exact=_median_seconds(lambda: det_exact(kernel), reps),
            det_multimodular=_median_seconds(lambda: det_multimodular(cleared), reps),
            prime_verify=_median_seconds(lambda: verify_main_theorem(projected), reps),
            det_by_bordering=_median_seconds(bordering, reps),
            bordering_fallback=fallback,
        )
        logger.info(f"Benchmarked n={n}: {row.to_dict()}")
        rows.append(row)
    return rows


def format_table(rows: Sequence[BenchRow], header: Optional[str] = None) -> str:
    """Fixed-width text table; a '*' marks a bordering fallback"""
    lines = [header] if header else []
    lines.append(f"{'n':>4}  " + "  ".join(f"{name:>18}" for name in ENGINES))
    for row in rows:
        cells = [f"{row.det_exact:>18.6f}", f"{row.det_multimodular:>18.6f}", f"{row.prime_verify:>18.6f}",
                 f"{row.det_by_bordering:>17.6f}{'*' if row.bordering_fallback else ' '}"]
        lines.append(f"{row.n:>4}  " + "  ".join(cells))
    if any(row.bordering_fallback for row in rows):
        lines.append("* leading minor vanished; det_by_bordering column times det_exact")
    return "\n".join(lines)
