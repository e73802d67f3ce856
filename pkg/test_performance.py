import time

import pytest

from padic_solve.core.config import settings
from padic_solve.models.problem import ProblemInstance
from padic_solve.services.counting import count_solutions, enumerate_solutions
from padic_solve.services.oracle import brute_force


class TestScanPerformance:
    """Runtime bounds for the reference grids and determinism of partitioned scans"""

    def test_partitioned_scan_is_deterministic(self, monkeypatch):
        monkeypatch.setattr(settings, "scan_chunk_size", 256)
        inst = ProblemInstance(g=3, n=2, k=5, p=13, e=3)
        serial = brute_force(inst, partitioned=False)
        runs = [brute_force(inst, partitioned=True).solutions for _ in range(3)]
        assert all(run == serial.solutions for run in runs)

    def test_scan_reports_elapsed_time(self):
        result = brute_force(ProblemInstance(g=2, n=1, k=3, p=7, e=3))
        assert result.elapsed.total_seconds() >= 0
        assert result.candidates_scanned == 3 * 343

    @pytest.mark.slow
    def test_largest_table_one_window_is_fast(self):
        start = time.time()
        for g in range(1, 7):
            for k in range(1, 5):
                inst = ProblemInstance(g=g, n=1, k=k, p=7, e=3)
                assert len(enumerate_solutions(inst)) == brute_force(inst).count
        assert time.time() - start < 10

    @pytest.mark.slow
    def test_table_two_oracle_is_fast(self):
        start = time.time()
        for g in range(1, 11):
            inst = ProblemInstance(g=g, n=1, k=11, p=11, e=3)
            assert brute_force(inst).count == count_solutions(inst).total
        assert time.time() - start < 10

    def test_formula_does_not_scale_with_the_window(self):
        inst = ProblemInstance(g=3, n=1, k=2, p=1000003, e=2)
        start = time.time()
        report = count_solutions(inst)
        assert report.total == report.N
        assert time.time() - start < 1
