from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict


class Method(str, Enum):
    FORMULA = "formula"
    LIFT = "lift"
    ORACLE = "oracle"


class OutputRecord(BaseModel):
    """One line of CLI output. Field order is the serialised key order."""

    model_config = ConfigDict(frozen=True, use_enum_values=True)

    g: int
    n: Optional[int] = None
    k: Optional[int] = None
    p: int
    e: Optional[int] = None
    m: Optional[int] = None
    method: Method
    count: Optional[int] = None
    solutions: Optional[List[int]] = None
    wieferich: Optional[bool] = None
    agreement: Optional[bool] = None
    exploratory: Optional[bool] = None
    unsupported_reason: Optional[str] = None

    def to_json(self) -> str:
        return self.model_dump_json(exclude_none=True)
