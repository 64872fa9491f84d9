from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field


class UniverseKind(str, Enum):
    EXHAUSTIVE = "exhaustive"
    RANDOM = "random"


class Universe(BaseModel):
    kind: UniverseKind
    order: int = Field(..., ge=1)
    count: int = Field(..., ge=0)
    edge_probability: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    seed: Optional[int] = None


class Violation(BaseModel):
    claim: str
    order: int
    k: Optional[int] = None
    detail: str
    witness_adj: Optional[str] = None


class PropertyRun(BaseModel):
    property_name: str
    universe: List[Universe] = Field(default_factory=list)
    violations: List[Violation] = Field(default_factory=list)
    tolerance: float
    checks_performed: int = 0
    informational: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations
