"""Counting and enumeration of solutions to g^(x^n) = x^k (mod p^e)."""

from padic_solve.models.problem import CountReport, ProblemInstance, ScanResult, SolutionSet
from padic_solve.services.counting import count_solutions, enumerate_solutions, is_wieferich_base
from padic_solve.services.oracle import brute_force, check_periodicity

__version__ = "1.0.0"

__all__ = [
    "CountReport",
    "ProblemInstance",
    "ScanResult",
    "SolutionSet",
    "brute_force",
    "check_periodicity",
    "count_solutions",
    "enumerate_solutions",
    "is_wieferich_base",
]
