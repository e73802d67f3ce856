"""Closed-form counts and explicit enumeration of solutions of
g^(x^n) = x^k (mod p^e) in the window [0, m*p^e).

Two cases are covered: p does not divide k, where every solution pair mod p
lifts uniquely, and k = p with n = 1, where lifting beyond p^1 happens only
for Wieferich bases and then each surviving pair has p descendants.
"""

import logging
import math
from collections import Counter
from typing import Dict, List, Tuple

from padic_solve.core.config import settings
from padic_solve.core.errors import DomainError, InternalConsistencyError, UnsupportedCaseError
from padic_solve.models.arith import FactorList, Residue
from padic_solve.models.problem import CaseTag, CountReport, ProblemInstance, SolutionSet
from padic_solve.services.hensel import lift_pair
from padic_solve.services.modmath import (
    crt_combine,
    discrete_log,
    factorize,
    linear_congruence_solutions,
    primitive_root,
    require_odd_prime,
)

logger = logging.getLogger(__name__)

SolutionPair = Tuple[Residue, Residue]


def reduction_degree(k: int, p: int, m: int) -> int:
    """d = gcd(k, p-1) / gcd(k, (p-1)/m)."""
    return math.gcd(k, p - 1) // math.gcd(k, (p - 1) // m)


def pair_count(k: int, n: int, p: int, m: int) -> Tuple[int, int, FactorList]:
    """(N, d, factors of d) for the mod-p solution pairs (x0 mod m, x mod p)."""
    d = reduction_degree(k, p, m)
    factors = factorize(d)
    # d | x0^n  <=>  prod q^ceil(alpha/n) | x0
    divisor = math.prod(q ** -(-alpha // n) for q, alpha in factors.factors)
    return m * math.gcd(k, p - 1) // divisor, d, factors


def _pairs_by_discrete_log(inst: ProblemInstance) -> List[SolutionPair]:
    p, m = inst.p, inst.m
    h = primitive_root(p)
    a = discrete_log(h, inst.g, p)
    pairs = []
    for x0 in range(m):
        # h^(a*x0^n) = h^(b*k)  <=>  k*b = a*x0^n (mod p-1)
        for b in linear_congruence_solutions(inst.k, a * pow(x0, inst.n, p - 1), p - 1):
            x1 = pow(h.value, b.value, p)
            pairs.append((Residue(value=x0, modulus=m), Residue(value=x1, modulus=p)))
    return sorted(pairs, key=lambda pair: (pair[0].value, pair[1].value))


def _pairs_by_scan(inst: ProblemInstance) -> List[SolutionPair]:
    g, n, k, p, m = inst.g, inst.n, inst.k, inst.p, inst.m
    return [
        (Residue(value=x0, modulus=m), Residue(value=x1, modulus=p))
        for x0 in range(m)
        for x1 in range(1, p)
        if pow(g, pow(x0, n, m), p) == pow(x1, k, p)
    ]


def count_mod_p(inst: ProblemInstance) -> Tuple[int, List[SolutionPair]]:
    """N and the solution pairs (x0 mod m, x1 mod p) of g^(x0^n) = x1^k (mod p).

    Pairs are built from discrete logarithms and, when m*p is under the scan
    ceiling, cross-checked against a double scan.
    """
    require_odd_prime(inst.p)
    N, d, _ = pair_count(inst.k, inst.n, inst.p, inst.m)
    pairs = _pairs_by_discrete_log(inst)

    if inst.m * inst.p <= settings.ceiling:
        scanned = _pairs_by_scan(inst)
        if [(a.value, b.value) for a, b in pairs] != [(a.value, b.value) for a, b in scanned]:
            raise InternalConsistencyError(f"{inst.label()}: discrete-log pairs disagree with the double scan")
    else:
        logger.debug(f"{inst.label()}: skipping the double scan, m*p = {inst.m * inst.p}")

    if len(pairs) != N:
        raise InternalConsistencyError(f"{inst.label()}: {len(pairs)} pairs found but the formula gives N = {N}")
    logger.debug(f"{inst.label()}: N = {N}, d = {d}")
    return N, pairs


def is_wieferich_base(g: int, p: int) -> bool:
    """g^(p-1) = 1 (mod p^2)."""
    require_odd_prime(p)
    if g % p == 0:
        raise DomainError(f"p = {p} divides g = {g}")
    return pow(g, p - 1, p * p) == 1


def count_solutions(inst: ProblemInstance) -> CountReport:
    tag = inst.require_supported()
    N, d, factors = pair_count(inst.k, inst.n, inst.p, inst.m)

    wieferich = None
    if tag == CaseTag.P_NDIVIDES_K:
        total = N
    else:
        wieferich = is_wieferich_base(inst.g, inst.p)
        if inst.e == 1:
            total = N
        else:
            total = N * inst.p if wieferich else 0

    logger.info(f"{inst.label()}: {total} solutions (N = {N}, d = {d}, case {tag.value})")
    return CountReport(
        instance=inst,
        N=N,
        d=d,
        d_factors=factors,
        m=inst.m,
        total=total,
        wieferich=wieferich,
        case_tag=tag,
    )


def _satisfies(inst: ProblemInstance, x: int) -> bool:
    modulus = inst.modulus
    exponent = pow(x, inst.n, inst.m * inst.p ** (inst.e - 1))
    return pow(inst.g, exponent, modulus) == pow(x, inst.k, modulus)


def enumerate_pnmidk(inst: ProblemInstance) -> SolutionSet:
    """Lift every mod-p pair to p^e and glue it with x0 mod m."""
    if inst.require_supported() != CaseTag.P_NDIVIDES_K:
        raise UnsupportedCaseError(f"p = {inst.p} divides k = {inst.k}; use the k = p enumeration")
    _, pairs = count_mod_p(inst)

    solutions = []
    for x0, x1 in pairs:
        lifted = lift_pair(inst.g, inst.n, inst.k, x0.value, x1.value, inst.p, inst.e)
        x = crt_combine(x0, Residue(value=lifted.residue, modulus=inst.modulus)).value
        if not _satisfies(inst, x):
            raise InternalConsistencyError(f"{inst.label()}: lifted value {x} from pair {x0}, {x1} is not a solution")
        solutions.append(x)
    return SolutionSet(window=(0, inst.window), solutions=sorted(solutions))


def enumerate_k_eq_p(inst: ProblemInstance) -> SolutionSet:
    """Breadth search mod m*p^j, j = 1..e, testing every child a + t*m*p^j directly."""
    if inst.require_supported() != CaseTag.K_EQUALS_P_N1:
        raise UnsupportedCaseError(f"k = {inst.k} is not p = {inst.p} with n = 1")
    g, p, m, e = inst.g, inst.p, inst.m, inst.e
    _, pairs = count_mod_p(inst)

    # root (solution mod m*p) -> its descendants at the current level
    roots = [crt_combine(x0, x1).value for x0, x1 in pairs]
    levels: Dict[int, List[int]] = {root: [root] for root in roots}
    for j in range(1, e):
        modulus, step = p ** (j + 1), m * p**j
        for root, current in levels.items():
            levels[root] = [
                a + t * step
                for a in current
                for t in range(p)
                if pow(g, (a + t * step) % step, modulus) == pow(a + t * step, p, modulus)
            ]
        logger.debug(f"{inst.label()}: {sum(map(len, levels.values()))} solutions mod {m}*{p}^{j + 1}")

    children = Counter(len(descendants) for descendants in levels.values())
    logger.debug(f"{inst.label()}: descendants per mod-p solution {dict(sorted(children.items()))}")

    solutions = sorted(x for descendants in levels.values() for x in descendants)
    expected = count_solutions(inst).total
    if len(solutions) != expected:
        raise InternalConsistencyError(
            f"{inst.label()}: level search found {len(solutions)} solutions, formula gives {expected}"
        )
    return SolutionSet(window=(0, inst.window), solutions=solutions)


def enumerate_solutions(inst: ProblemInstance) -> SolutionSet:
    if inst.require_supported() == CaseTag.P_NDIVIDES_K:
        return enumerate_pnmidk(inst)
    return enumerate_k_eq_p(inst)
