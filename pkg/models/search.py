from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from config import settings
from models.certificate import SkCertificate
from models.matrices import PmOneMatrix


class SearchStatus(str, Enum):
    FOUND = "found"
    EXHAUSTED = "exhausted"
    BUDGET_EXCEEDED = "budget_exceeded"


class Feasibility(BaseModel):
    k: int
    order: int
    feasible: bool
    reason: str = ""
    allowed_traces: List[int] = Field(default_factory=list)


class SearchConfig(BaseModel):
    k: int = Field(..., ge=1)
    order: int = Field(..., ge=1)
    budget: int = Field(default=settings.SEARCH_DEFAULT_BUDGET, ge=1)
    symmetry_reduction: bool = True
    resume_token: Optional[str] = None
    workers: int = Field(default=settings.SEARCH_WORKERS, ge=1)


class PruningRule(BaseModel):
    name: str
    soundness: str = ""
    enabled: bool = True


class SearchResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    k: int
    order: int
    status: SearchStatus
    witness: Optional[PmOneMatrix] = None
    certificate: Optional[SkCertificate] = None
    nodes_expanded: int = 0
    obstructions_applied: List[str] = Field(default_factory=list)
    pruning_rules: List[str] = Field(default_factory=list)
    resume_token: Optional[str] = None
