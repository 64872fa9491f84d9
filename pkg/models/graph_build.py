from enum import Enum
from typing import Any, Dict, List, NamedTuple, Optional

from pydantic import BaseModel, ConfigDict, Field

from models.certificate import CheckResult
from models.matrices import Graph
from models.spectrum import SpectrumPoint


class ZeroDiag(str, Enum):
    AUTO = "auto"
    FORCE = "force"


class BlowupSpec(BaseModel):
    t: int = Field(..., ge=1)
    closed: bool = False


class GraphCertificate(BaseModel):
    """Expected spectrum and named claims attached to a built graph."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    family: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    order: int
    expected_spectrum: Optional[List[SpectrumPoint]] = None
    claims: List[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def claim(self, name: str) -> Optional[CheckResult]:
        return next((c for c in self.claims if c.name == name), None)


class BuiltGraph(NamedTuple):
    graph: Graph
    certificate: GraphCertificate
