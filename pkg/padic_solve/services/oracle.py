import logging
import random
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from datetime import timedelta
from typing import List, Optional

from padic_solve.core.config import settings
from padic_solve.core.errors import ResourceLimitError
from padic_solve.models.problem import ProblemInstance, ScanResult

logger = logging.getLogger(__name__)


def _scan_range(g: int, n: int, k: int, modulus: int, period: int, lo: int, hi: int) -> List[int]:
    """x in [lo, hi) with g^(x^n mod period) = x^k (mod modulus)."""
    return [x for x in range(lo, hi) if pow(g, pow(x, n, period), modulus) == pow(x, k, modulus)]


class OracleScanner:
    """Exhaustive scanner over the window [0, m*p^e)

    The exponent x^n is reduced modulo m*p^(e-1), the order bound of g
    modulo p^e. Partitioned scans run on a shared thread pool and are merged
    in range order, so serial and partitioned scans return identical lists.
    """

    _instance = None
    _lock = threading.Lock()
    _executor = None

    def __new__(cls):
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    cls._instance = super(OracleScanner, cls).__new__(cls)
        return cls._instance

    def __init__(self):
        if hasattr(self, "_initialized"):
            return
        self._initialized = True

        self._executor = None
        logger.debug("OracleScanner initialized")

    def _get_executor(self) -> ThreadPoolExecutor:
        if self._executor is None:
            with self._lock:
                if self._executor is None:
                    self._executor = ThreadPoolExecutor(
                        max_workers=settings.scan_workers, thread_name_prefix="oracle_scan"
                    )
        return self._executor

    def brute_force(
        self,
        inst: ProblemInstance,
        *,
        ceiling: Optional[int] = None,
        partitioned: bool = True,
    ) -> ScanResult:
        ceiling = settings.ceiling if ceiling is None else ceiling
        window = inst.window
        if window > ceiling:
            raise ResourceLimitError(f"{inst.label()}: window m*p^e = {window} exceeds the scan ceiling {ceiling}")

        exploratory = not inst.supported
        if exploratory:
            logger.warning(f"{inst.label()}: exploratory scan ({inst.unsupported_reason})")

        period = inst.m * inst.p ** (inst.e - 1)
        args = (inst.g, inst.n, inst.k, inst.modulus, period)
        start_time = time.time()

        chunk = max(1, settings.scan_chunk_size)
        if partitioned and window > chunk:
            bounds = [(lo, min(lo + chunk, window)) for lo in range(0, window, chunk)]
            logger.debug(f"{inst.label()}: scanning {len(bounds)} partitions of {chunk}")
            executor = self._get_executor()
            futures = [executor.submit(_scan_range, *args, lo, hi) for lo, hi in bounds]
            solutions = [x for future in futures for x in future.result()]
        else:
            solutions = _scan_range(*args, 0, window)

        elapsed = time.time() - start_time
        logger.info(f"{inst.label()}: {len(solutions)} solutions in {window} candidates ({elapsed:.3f}s)")
        return ScanResult(
            instance=inst,
            solutions=solutions,
            elapsed=timedelta(seconds=elapsed),
            candidates_scanned=window,
            exploratory=exploratory,
        )

    def check_periodicity(self, inst: ProblemInstance, samples: Optional[int] = None) -> bool:
        """f(x) = f(x + m*p^e) (mod p^e) on sampled x, powering without exponent reduction."""
        samples = settings.periodicity_samples if samples is None else samples
        rng = random.Random(f"{inst.g}:{inst.n}:{inst.k}:{inst.p}:{inst.e}")
        modulus, window = inst.modulus, inst.window

        def f(x: int) -> int:
            return (pow(inst.g, x**inst.n, modulus) - pow(x, inst.k, modulus)) % modulus

        for _ in range(samples):
            x = rng.randrange(window)
            if f(x) != f(x + window):
                logger.warning(f"{inst.label()}: f({x}) and f({x + window}) differ mod {modulus}")
                return False
        return True

    def shutdown(self) -> None:
        if self._executor:
            self._executor.shutdown(wait=True)
            self._executor = None

    def __del__(self):
        """Cleanup thread pool"""
        if hasattr(self, "_executor") and self._executor:
            self._executor.shutdown(wait=False)


# Create global instance
oracle_scanner = OracleScanner()


def brute_force(inst: ProblemInstance, *, ceiling: Optional[int] = None, partitioned: bool = True) -> ScanResult:
    return oracle_scanner.brute_force(inst, ceiling=ceiling, partitioned=partitioned)


def check_periodicity(inst: ProblemInstance, samples: Optional[int] = None) -> bool:
    return oracle_scanner.check_periodicity(inst, samples)
