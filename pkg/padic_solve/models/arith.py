import math
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator
from sympy import isprime

from padic_solve.core.errors import DomainError


class Residue(BaseModel):
    """An integer class modulo ``modulus``, stored by its least nonnegative representative."""

    model_config = ConfigDict(frozen=True)

    value: int = Field(ge=0)
    modulus: int = Field(ge=1)

    @model_validator(mode="after")
    def _check_range(self) -> "Residue":
        if self.value >= self.modulus:
            raise ValueError(f"value {self.value} is not reduced modulo {self.modulus}")
        return self

    @classmethod
    def of(cls, value: int, modulus: int) -> "Residue":
        return cls(value=value % modulus, modulus=modulus)

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return f"{self.value} mod {self.modulus}"


class FactorList(BaseModel):
    model_config = ConfigDict(frozen=True)

    factors: List[Tuple[int, int]] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_factors(self) -> "FactorList":
        previous = 1
        for prime, multiplicity in self.factors:
            if multiplicity < 1:
                raise ValueError(f"multiplicity of {prime} must be positive")
            if prime <= previous:
                raise ValueError("primes must be strictly increasing")
            if not isprime(prime):
                raise ValueError(f"{prime} is not prime")
            previous = prime
        return self

    def value(self) -> int:
        return math.prod(q**a for q, a in self.factors)

    def __len__(self) -> int:
        return len(self.factors)


class PadicApprox(BaseModel):
    """An element of Z_p known modulo p^precision."""

    model_config = ConfigDict(frozen=True)

    p: int = Field(ge=2)
    precision: int = Field(ge=1)
    residue: int = Field(ge=0)

    @model_validator(mode="after")
    def _check_residue(self) -> "PadicApprox":
        if self.residue >= self.p**self.precision:
            raise ValueError(f"residue {self.residue} exceeds p^{self.precision}")
        return self

    @classmethod
    def of(cls, value: int, p: int, precision: int) -> "PadicApprox":
        return cls(p=p, precision=precision, residue=value % p**precision)

    @property
    def modulus(self) -> int:
        return self.p**self.precision

    def reduce(self, precision: int) -> "PadicApprox":
        if precision > self.precision:
            raise DomainError(f"cannot raise precision from {self.precision} to {precision}")
        return PadicApprox.of(self.residue, self.p, precision)

    def valuation(self) -> float:
        """v_p of the stored residue; inf when it is zero to the known precision."""
        if self.residue == 0:
            return math.inf
        v = 0
        r = self.residue
        while r % self.p == 0:
            r //= self.p
            v += 1
        return v

    def is_unit(self) -> bool:
        return self.residue % self.p != 0

    def inverse(self) -> "PadicApprox":
        if not self.is_unit():
            raise DomainError(f"{self.residue} is not a unit modulo {self.p}")
        return PadicApprox.of(pow(self.residue, -1, self.modulus), self.p, self.precision)

    def _operand(self, other) -> Optional[Tuple[int, int]]:
        if isinstance(other, PadicApprox):
            if other.p != self.p:
                raise DomainError(f"cannot combine {self.p}-adic and {other.p}-adic values")
            return other.residue, min(self.precision, other.precision)
        if isinstance(other, int):
            return other, self.precision
        return None

    def __add__(self, other):
        coerced = self._operand(other)
        if coerced is None:
            return NotImplemented
        value, precision = coerced
        return PadicApprox.of(self.residue + value, self.p, precision)

    __radd__ = __add__

    def __sub__(self, other):
        coerced = self._operand(other)
        if coerced is None:
            return NotImplemented
        value, precision = coerced
        return PadicApprox.of(self.residue - value, self.p, precision)

    def __rsub__(self, other):
        coerced = self._operand(other)
        if coerced is None:
            return NotImplemented
        value, precision = coerced
        return PadicApprox.of(value - self.residue, self.p, precision)

    def __mul__(self, other):
        coerced = self._operand(other)
        if coerced is None:
            return NotImplemented
        value, precision = coerced
        return PadicApprox.of(self.residue * value, self.p, precision)

    __rmul__ = __mul__

    def __neg__(self) -> "PadicApprox":
        return PadicApprox.of(-self.residue, self.p, self.precision)

    def __str__(self) -> str:
        return f"{self.residue} + O({self.p}^{self.precision})"


class UnitDecomposition(BaseModel):
    """x = omega * one_unit with omega a (p-1)-st root of unity and one_unit = 1 mod p."""

    model_config = ConfigDict(frozen=True)

    omega: PadicApprox
    one_unit: PadicApprox

    @model_validator(mode="after")
    def _check_parts(self) -> "UnitDecomposition":
        omega, one_unit = self.omega, self.one_unit
        if omega.p != one_unit.p or omega.precision != one_unit.precision:
            raise ValueError("omega and one_unit must share p and precision")
        if pow(omega.residue, omega.p - 1, omega.modulus) != 1 % omega.modulus:
            raise ValueError(f"omega {omega.residue} is not a (p-1)-st root of unity")
        if one_unit.residue % one_unit.p != 1:
            raise ValueError(f"one_unit {one_unit.residue} is not 1 mod p")
        return self

    def product(self) -> PadicApprox:
        return self.omega * self.one_unit
