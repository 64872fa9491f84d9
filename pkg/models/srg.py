from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class SrgParams(BaseModel):
    """(v, k, a, c): order, degree, common neighbours of adjacent / non-adjacent pairs."""

    v: int = Field(..., ge=1)
    k: int = Field(..., ge=0)
    a: int = Field(..., ge=0)
    c: int = Field(..., ge=0)

    @model_validator(mode='after')
    def check_feasible(self):
        if self.k >= self.v:
            raise ValueError(f"Degree {self.k} must be below the order {self.v}")
        if self.k * (self.k - self.a - 1) != (self.v - self.k - 1) * self.c:
            raise ValueError(
                f"Infeasible parameters {self.as_tuple()}: k(k-a-1) != (v-k-1)c"
            )
        return self

    def as_tuple(self) -> tuple:
        return (self.v, self.k, self.a, self.c)

    def complement(self) -> "SrgParams":
        v, k, a, c = self.as_tuple()
        return SrgParams(v=v, k=v - k - 1, a=v - 2 * k + c - 2, c=v - 2 * k + a)


class BoundSide(str, Enum):
    UPPER = "upper"
    LOWER = "lower"
    BRACKET = "bracket"


class BoundReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str
    inputs: Dict[str, Any] = Field(default_factory=dict)
    value: Any
    side: BoundSide
    citation: str
    lower: Optional[Any] = None
    upper: Optional[Any] = None
    premise_holds: bool = True
    asymptotic: bool = False
    witness: Dict[str, Any] = Field(default_factory=dict)
    notes: List[str] = Field(default_factory=list)


class TaylorSummary(BaseModel):
    """Density ratios of T(q) and the share of the squared spectrum carried by its minority eigenvalues."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    q: int
    degree_ratio: Any
    adjacent_common_ratio: Any
    nonadjacent_common_ratio: Any
    positive_mass_ratio: Any
    complement_negative_mass_ratio: Any
