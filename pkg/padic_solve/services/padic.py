"""Truncated p-adic arithmetic on Z_p for odd p.

Series are summed exactly: every term x^i/i or x^i/i! is formed from a
numerator computed modulo p^(e+V), with V the largest power of p any
denominator in the truncated range can hold, so the division by that power
of p is exact and the remaining unit part is inverted modulo p^e.
"""

import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple, Union

from padic_solve.core.errors import DomainError, InternalConsistencyError
from padic_solve.models.arith import PadicApprox, UnitDecomposition
from padic_solve.services.modmath import IntLike, as_int, require_odd_prime

logger = logging.getLogger(__name__)

INFINITY = math.inf


def _vp(x: int, p: int) -> int:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _floor_log(i: int, p: int) -> int:
    """Largest j with p^j <= i."""
    j = 0
    while p ** (j + 1) <= i:
        j += 1
    return j


def valuation(x: Union[int, Fraction], p: int) -> Union[int, float]:
    """v_p(x); INFINITY for x = 0. Rationals give v_p(a) - v_p(b)."""
    if p < 2:
        raise DomainError(f"valuation needs a prime p, got {p}")
    if x == 0:
        return INFINITY
    if isinstance(x, Fraction):
        return _vp(abs(x.numerator), p) - _vp(x.denominator, p)
    return _vp(abs(x), p)


def padic_abs(x: Union[int, Fraction], p: int) -> Fraction:
    v = valuation(x, p)
    if v == INFINITY:
        return Fraction(0)
    return Fraction(1, p**v) if v >= 0 else Fraction(p ** (-v))


def _require_unit(x: int, p: int) -> None:
    if x % p == 0:
        raise DomainError(f"{x} is not a unit modulo {p}")


def teichmuller(x: IntLike, p: int, e: int) -> PadicApprox:
    """omega(x) mod p^e: the fixed point of y -> y^p starting at x."""
    require_odd_prime(p)
    x = as_int(x)
    _require_unit(x, p)
    modulus = p**e
    y = x % modulus
    for _ in range(e):
        nxt = pow(y, p, modulus)
        if nxt == y:
            break
        y = nxt
    else:
        raise InternalConsistencyError(f"Frobenius iteration for omega({x}) mod {p}^{e} did not settle")
    return PadicApprox(p=p, precision=e, residue=y)


def unit_decompose(x: IntLike, p: int, e: int) -> UnitDecomposition:
    x = as_int(x)
    omega = teichmuller(x, p, e)
    one_unit = PadicApprox.of(x, p, e) * omega.inverse()
    return UnitDecomposition(omega=omega, one_unit=one_unit)


def _target_precision(value: PadicApprox, e: Optional[int]) -> int:
    if e is None:
        return value.precision
    if e < 1 or e > value.precision:
        raise DomainError(f"precision {e} not available from an input known to {value.precision} digits")
    return e


def log_one_unit(u: PadicApprox, e: Optional[int] = None) -> PadicApprox:
    """log_p(u) for u = 1 (mod p), truncated to p^e."""
    p = u.p
    require_odd_prime(p)
    e = _target_precision(u, e)
    if u.residue % p != 1:
        raise DomainError(f"{u.residue} is not congruent to 1 mod {p}; log_p does not converge")
    y = (u.residue - 1) % p**e
    if y == 0:
        return PadicApprox(p=p, precision=e, residue=0)

    # term i has valuation >= i - v_p(i) >= i - floor(log_p i), nondecreasing in i
    last = 0
    while (last + 1) - _floor_log(last + 1, p) < e:
        last += 1
    extra = _floor_log(last, p) if last else 0
    work, modulus = p ** (e + extra), p**e

    total = 0
    for i in range(1, last + 1):
        v = _vp(i, p)
        numerator = pow(y, i, work)
        if numerator % p**v:
            raise InternalConsistencyError(f"log term {i} is not divisible by {p}^{v}")
        term = (numerator // p**v) * pow(i // p**v, -1, modulus)
        total += term if i % 2 else -term
    return PadicApprox.of(total, p, e)


def exp_small(t: PadicApprox, e: Optional[int] = None) -> PadicApprox:
    """exp_p(t) for v_p(t) >= 1, truncated to p^e."""
    p = t.p
    require_odd_prime(p)
    e = _target_precision(t, e)
    if t.residue % p != 0:
        raise DomainError(f"{t.residue} is a unit; exp_p needs v_p(t) >= 1")
    t_res = t.residue % p**e
    if t_res == 0:
        return PadicApprox.of(1, p, e)

    # term i has valuation >= i - v_p(i!) >= i - floor((i-1)/(p-1)), nondecreasing in i
    last = 0
    while (last + 1) - last // (p - 1) < e:
        last += 1
    factorial_vp = [0]
    for i in range(1, last + 1):
        factorial_vp.append(factorial_vp[-1] + _vp(i, p))
    work, modulus = p ** (e + factorial_vp[last]), p**e

    total = 0
    factorial = 1
    for i in range(last + 1):
        if i:
            factorial *= i
        v = factorial_vp[i]
        numerator = pow(t_res, i, work)
        if numerator % p**v:
            raise InternalConsistencyError(f"exp term {i} is not divisible by {p}^{v}")
        total += (numerator // p**v) * pow(factorial // p**v, -1, modulus)
    return PadicApprox.of(total, p, e)


@lru_cache(maxsize=4096)
def _generator_parts(g: int, p: int, e: int) -> Tuple[int, int]:
    """(omega(g), log_p <g>) modulo p^e."""
    parts = unit_decompose(g, p, e)
    return parts.omega.residue, log_one_unit(parts.one_unit).residue


def _interp_setup(g: int, x: PadicApprox, e: Optional[int]) -> Tuple[int, int, int, int]:
    p = x.p
    require_odd_prime(p)
    _require_unit(g, p)
    e = _target_precision(x, e)
    omega, log_unit = _generator_parts(g % p**e, p, e)
    return p, e, omega, log_unit


def interp_f(g: int, n: int, x0: int, x: PadicApprox, e: Optional[int] = None) -> PadicApprox:
    """F_{x0}(x) = omega(g)^(x0^n) * <g>^(x^n) modulo p^e.

    Agrees with g^(x^n) mod p^e for every integer x = x0 (mod m). x0 may be
    given modulo any multiple of m dividing p - 1; only x0^n mod p - 1 is used.
    """
    p, e, omega, log_unit = _interp_setup(g, x, e)
    modulus = p**e
    root_part = pow(omega, pow(x0, n, p - 1), modulus)
    # <g>^(p^(e-1)) = 1 mod p^e, so x^n only matters mod p^(e-1)
    exponent = pow(x.residue, n, p ** (e - 1))
    one_unit_part = exp_small(PadicApprox.of(exponent * log_unit, p, e))
    return PadicApprox.of(root_part * one_unit_part.residue, p, e)


def interp_f_derivative(g: int, n: int, x0: int, x: PadicApprox, e: Optional[int] = None) -> PadicApprox:
    """d/dx F_{x0}(x) = F_{x0}(x) * n * x^(n-1) * log_p <g>, modulo p^e."""
    p, e, _, log_unit = _interp_setup(g, x, e)
    value = interp_f(g, n, x0, x, e)
    slope = n * pow(x.residue, n - 1, p**e) * log_unit
    return PadicApprox.of(value.residue * slope, p, e)
