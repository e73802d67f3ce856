"""Exact modular-integer primitives.

Python integers are arbitrary precision, so none of these can overflow; the
window ceiling on problem instances lives in ``ProblemInstance`` instead.
"""

import logging
import math
from typing import List, Union

from sympy import factorint, isprime, totient
from sympy.ntheory import primitive_root as _sympy_primitive_root
from sympy.ntheory.modular import crt
from sympy.ntheory.residue_ntheory import discrete_log as _sympy_discrete_log

from padic_solve.core.errors import DomainError
from padic_solve.models.arith import FactorList, Residue

logger = logging.getLogger(__name__)

IntLike = Union[int, Residue]


def as_int(x: IntLike) -> int:
    return x.value if isinstance(x, Residue) else int(x)


def is_odd_prime(p: int) -> bool:
    return p > 2 and bool(isprime(p))


def require_odd_prime(p: int) -> None:
    if not is_odd_prime(p):
        raise DomainError(f"{p} is not an odd prime")


def mod_pow(base: int, exponent: int, modulus: int) -> Residue:
    if modulus < 2:
        raise DomainError(f"modulus must be at least 2, got {modulus}")
    if exponent < 0:
        raise DomainError(f"exponent must be nonnegative, got {exponent}")
    return Residue(value=pow(base, exponent, modulus), modulus=modulus)


def inverse_mod(a: int, modulus: int) -> int:
    try:
        return pow(a, -1, modulus)
    except ValueError:
        raise DomainError(f"{a} is not invertible modulo {modulus}") from None


def factorize(x: int) -> FactorList:
    """Prime factorization of x as (prime, multiplicity) pairs, primes ascending."""
    if x < 1:
        raise DomainError(f"cannot factor {x}")
    return FactorList(factors=sorted((int(q), int(a)) for q, a in factorint(x).items()))


def multiplicative_order(g: IntLike, modulus: int) -> int:
    """Least m >= 1 with g^m = 1 (mod modulus).

    Starts from the group order phi(modulus) and strips prime factors while
    the reduced exponent still annihilates g.
    """
    g = as_int(g)
    if modulus < 2:
        raise DomainError(f"modulus must be at least 2, got {modulus}")
    if math.gcd(g, modulus) != 1:
        raise DomainError(f"{g} is not a unit modulo {modulus}")
    order = int(totient(modulus))
    for q, _ in factorize(order).factors:
        while order % q == 0 and pow(g, order // q, modulus) == 1:
            order //= q
    return order


def primitive_root(p: int) -> Residue:
    """Smallest h >= 2 generating (Z/p)^*."""
    require_odd_prime(p)
    return Residue(value=int(_sympy_primitive_root(p)), modulus=p)


def discrete_log(h: IntLike, y: IntLike, p: int) -> int:
    """The a in [0, p-1) with h^a = y (mod p)."""
    require_odd_prime(p)
    h, y = as_int(h) % p, as_int(y) % p
    if h == 0:
        raise DomainError(f"base {h} is not a unit modulo {p}")
    if y == 0:
        raise DomainError(f"0 has no discrete logarithm modulo {p}")
    try:
        return int(_sympy_discrete_log(p, y, h)) % (p - 1)
    except ValueError:
        raise DomainError(f"{y} is not a power of {h} modulo {p}") from None


def crt_combine(r1: Residue, r2: Residue) -> Residue:
    m1, m2 = r1.modulus, r2.modulus
    if math.gcd(m1, m2) != 1:
        raise DomainError(f"moduli {m1} and {m2} are not coprime")
    if m1 == 1 or m2 == 1:
        return r2 if m1 == 1 else r1
    value, modulus = crt([m1, m2], [r1.value, r2.value], check=False)
    return Residue(value=int(value), modulus=int(modulus))


def linear_congruence_solutions(a: int, b: int, M: int) -> List[Residue]:
    """All x in [0, M) with a*x = b (mod M), ascending."""
    if M < 2:
        raise DomainError(f"modulus must be at least 2, got {M}")
    a, b = a % M, b % M
    d = math.gcd(a, M)
    if b % d:
        return []
    step = M // d
    x0 = (b // d) * pow(a // d, -1, step) % step if step > 1 else 0
    return [Residue(value=x0 + t * step, modulus=M) for t in range(d)]
