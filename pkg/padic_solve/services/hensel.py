"""Newton/Hensel lifting of roots with unit derivative."""

import logging
from typing import Callable

from pydantic import BaseModel, ConfigDict, Field, model_validator

from padic_solve.core.errors import (
    DomainError,
    HypothesisViolationError,
    InternalConsistencyError,
    UnsupportedCaseError,
)
from padic_solve.models.arith import PadicApprox, Residue
from padic_solve.services.modmath import inverse_mod, require_odd_prime
from padic_solve.services.padic import interp_f, interp_f_derivative

logger = logging.getLogger(__name__)

# evaluator(candidate, j) -> value mod p^j
Evaluator = Callable[[int, int], int]


class LiftProblem(BaseModel):
    model_config = ConfigDict(frozen=True)

    f: Evaluator
    df: Evaluator
    seed: Residue
    target_precision: int = Field(ge=1)

    @model_validator(mode="after")
    def _check_seed(self) -> "LiftProblem":
        if self.seed.modulus < 2:
            raise ValueError("seed must be a residue modulo a prime")
        return self

    @property
    def p(self) -> int:
        return self.seed.modulus


def _residual_valuation(r: int, p: int, cap: int) -> int:
    v = 0
    while v < cap and r % p == 0:
        r //= p
        v += 1
    return v


def hensel_lift(problem: LiftProblem) -> PadicApprox:
    """The unique root x mod p^e of f with x = seed (mod p).

    Linear schedule: the root mod p^j is refined to a root mod p^(j+1) by
    one Newton step, and every step must leave a zero residual.
    """
    p, e = problem.p, problem.target_precision
    x = problem.seed.value
    if problem.f(x, 1) % p != 0:
        raise HypothesisViolationError(f"f({x}) is not 0 mod {p}")
    if problem.df(x, 1) % p == 0:
        raise HypothesisViolationError(f"f'({x}) is not a unit mod {p}")

    for j in range(1, e):
        modulus = p ** (j + 1)
        residual = problem.f(x, j + 1) % modulus
        before = _residual_valuation(residual, p, j + 1)
        if before < j:
            raise InternalConsistencyError(f"root {x} lost precision: residual valuation {before} < {j}")
        if residual:
            x = (x - residual * inverse_mod(problem.df(x, j + 1), modulus)) % modulus
        if problem.f(x, j + 1) % modulus:
            raise InternalConsistencyError(f"Newton step at {p}^{j + 1} left a nonzero residual")
        logger.debug(f"lifted seed {problem.seed.value} to {x} mod {p}^{j + 1}")

    if problem.f(x, e) % p**e != 0 or x % p != problem.seed.value:
        raise InternalConsistencyError(f"lifted value {x} fails its own congruence mod {p}^{e}")
    return PadicApprox.of(x, p, e)


def lift_pair(g: int, n: int, k: int, x0: int, a: int, p: int, e: int) -> PadicApprox:
    """Lift a mod-p solution a of omega(g)^(x0^n) = a^k to the root of
    omega(g)^(x0^n) * <g>^(x^n) = x^k with x = a (mod p), modulo p^e."""
    require_odd_prime(p)
    if k % p == 0:
        raise UnsupportedCaseError(
            f"p = {p} divides k = {k}: the derivative vanishes mod p, "
            "so solutions are counted level by level instead of lifted"
        )
    if g % p == 0:
        raise DomainError(f"p = {p} divides g = {g}")
    a %= p
    if pow(g, pow(x0, n, p - 1), p) != pow(a, k, p):
        raise DomainError(f"({x0}, {a}) is not a solution pair of g^(x0^n) = x^k mod {p}")

    def f(x: int, j: int) -> int:
        modulus = p**j
        value = interp_f(g, n, x0, PadicApprox.of(x, p, j), j)
        return (value.residue - pow(x, k, modulus)) % modulus

    def df(x: int, j: int) -> int:
        modulus = p**j
        slope = interp_f_derivative(g, n, x0, PadicApprox.of(x, p, j), j)
        return (slope.residue - k * pow(x, k - 1, modulus)) % modulus

    problem = LiftProblem(f=f, df=df, seed=Residue(value=a, modulus=p), target_precision=e)
    return hensel_lift(problem)
