from datetime import timedelta
from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator
from sympy import isprime

from padic_solve.core.config import settings
from padic_solve.core.errors import (
    DomainError,
    InternalConsistencyError,
    ResourceLimitError,
    UnsupportedCaseError,
)
from padic_solve.models.arith import FactorList
from padic_solve.services.modmath import multiplicative_order


class CaseTag(str, Enum):
    P_NDIVIDES_K = "p_ndivides_k"
    K_EQUALS_P_N1 = "k_equals_p_n1"


class ProblemInstance(BaseModel):
    """The congruence g^(x^n) = x^k (mod p^e).

    ``g`` is reduced modulo p^e and ``m`` (the order of g modulo p) is
    recomputed on construction; any ``m`` passed in is discarded.
    """

    g: int
    n: int
    k: int
    p: int
    e: int
    m: int = 0

    @model_validator(mode="after")
    def _derive(self) -> "ProblemInstance":
        if self.n < 1 or self.k < 1 or self.e < 1:
            raise DomainError(f"n, k and e must be positive (n={self.n}, k={self.k}, e={self.e})")
        if not isprime(self.p):
            raise DomainError(f"p = {self.p} is not prime")
        if self.g % self.p == 0:
            raise DomainError(f"p = {self.p} divides g = {self.g}")
        self.g = self.g % self.p**self.e
        self.m = multiplicative_order(self.g, self.p)
        if self.window > settings.window_ceiling:
            raise ResourceLimitError(
                f"window m*p^e = {self.window} exceeds the arithmetic ceiling {settings.window_ceiling}"
            )
        return self

    @property
    def modulus(self) -> int:
        return self.p**self.e

    @property
    def window(self) -> int:
        return self.m * self.p**self.e

    @property
    def case_tag(self) -> Optional[CaseTag]:
        if self.p == 2:
            return None
        if self.k % self.p != 0:
            return CaseTag.P_NDIVIDES_K
        if self.k == self.p and self.n == 1:
            return CaseTag.K_EQUALS_P_N1
        return None

    @property
    def supported(self) -> bool:
        return self.case_tag is not None

    @property
    def unsupported_reason(self) -> Optional[str]:
        if self.p == 2:
            return "p = 2 needs a separate analysis since log_2 only converges on 1 + 4Z_2"
        if self.k % self.p == 0 and self.k != self.p:
            return f"p = {self.p} divides k = {self.k} with k != p; this case is still open"
        if self.k == self.p and self.n > 1:
            return f"k = p with n = {self.n} > 1 is still open"
        return None

    def require_supported(self) -> CaseTag:
        tag = self.case_tag
        if tag is None:
            raise UnsupportedCaseError(self.unsupported_reason or "unknown")
        return tag

    def label(self) -> str:
        return f"g={self.g} n={self.n} k={self.k} p={self.p} e={self.e}"


class CountReport(BaseModel):
    model_config = ConfigDict(frozen=True, use_enum_values=True)

    instance: ProblemInstance
    N: int = Field(ge=0)
    d: int = Field(ge=1)
    d_factors: FactorList
    m: int
    total: int = Field(ge=0)
    wieferich: Optional[bool] = None
    case_tag: CaseTag

    @model_validator(mode="after")
    def _check_case_rules(self) -> "CountReport":
        if self.d_factors.value() != self.d:
            raise InternalConsistencyError(f"factorization does not reconstruct d = {self.d}")
        e, p = self.instance.e, self.instance.p
        if self.case_tag == CaseTag.P_NDIVIDES_K:
            expected = self.N
        elif e == 1:
            expected = self.N
        else:
            expected = self.N * p if self.wieferich else 0
        if self.total != expected:
            raise InternalConsistencyError(f"total {self.total} breaks the {self.case_tag} rule (expected {expected})")
        return self


class SolutionSet(BaseModel):
    model_config = ConfigDict(frozen=True)

    window: Tuple[int, int]
    solutions: List[int] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_sorted(self) -> "SolutionSet":
        lo, hi = self.window
        for a, b in zip(self.solutions, self.solutions[1:]):
            if a >= b:
                raise ValueError("solutions must be strictly increasing")
        if self.solutions and (self.solutions[0] < lo or self.solutions[-1] >= hi):
            raise ValueError(f"solutions fall outside the window [{lo}, {hi})")
        return self

    def __len__(self) -> int:
        return len(self.solutions)


class ScanResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    instance: ProblemInstance
    solutions: List[int]
    elapsed: timedelta
    candidates_scanned: int
    exploratory: bool = False

    @model_validator(mode="after")
    def _check_window(self) -> "ScanResult":
        window = self.instance.window
        if any(x < 0 or x >= window for x in self.solutions):
            raise ValueError(f"scan produced values outside [0, {window})")
        return self

    @property
    def count(self) -> int:
        return len(self.solutions)
