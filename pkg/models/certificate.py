from enum import Enum
from typing import List, Literal, NamedTuple, Optional

from pydantic import BaseModel, Field, model_validator

from models.matrices import PmOneMatrix
from models.spectrum import Inertia


class Verdict(str, Enum):
    MEMBER = "member"
    NON_MEMBER = "non_member"
    INDETERMINATE = "indeterminate"


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class SkCertificate(BaseModel):
    k: int = Field(..., ge=1)
    order: int = Field(..., ge=1)
    verdict: Verdict
    inertia: Inertia
    checks: List[CheckResult] = Field(default_factory=list)
    mode: Literal["exact", "float"] = "exact"

    @model_validator(mode='after')
    def check_inertia_total(self):
        if self.inertia.order != self.order:
            raise ValueError(f"Inertia {self.inertia} does not add up to order {self.order}")
        return self

    @property
    def is_member(self) -> bool:
        return self.verdict == Verdict.MEMBER

    def check(self, name: str) -> Optional[CheckResult]:
        return next((c for c in self.checks if c.name == name), None)


class CertifiedMatrix(NamedTuple):
    matrix: PmOneMatrix
    certificate: SkCertificate

    @property
    def k(self) -> int:
        return self.certificate.k


class ConstructionRecipe(BaseModel):
    family: Literal["thKHN", "thj", "thj1"]
    s: int = Field(..., ge=1)
    n: int = Field(..., ge=1)
    hadamard_source: str
    latin_source: Literal["back_circulant", "const_diag"]
    expected_inertia: Inertia
    printed_positive_count: Optional[int] = None
    notes: List[str] = Field(default_factory=list)

    @property
    def order(self) -> int:
        return self.s * self.n


class ConstructibilityStatus(str, Enum):
    CONSTRUCTIBLE = "constructible"
    OBSTRUCTED = "obstructed"
    UNKNOWN = "unknown"


class RecipeFactor(BaseModel):
    kind: Literal["J1", "sylvester", "thkhn", "paley2"]
    parameter: int = Field(..., ge=0)
    k: int = Field(..., ge=1)
    order: int = Field(..., ge=1)

    @property
    def label(self) -> str:
        return "J_1" if self.kind == "J1" else f"{self.kind}({self.parameter})"


class ConstructibilityDecision(BaseModel):
    k: int = Field(..., ge=1)
    status: ConstructibilityStatus
    factors: List[RecipeFactor] = Field(default_factory=list)
    reason: str = ""

    @property
    def recipe(self) -> Optional[str]:
        if self.status != ConstructibilityStatus.CONSTRUCTIBLE:
            return None
        return " (x) ".join(f.label for f in self.factors)

    @property
    def order(self) -> Optional[int]:
        if not self.factors:
            return None
        out = 1
        for f in self.factors:
            out *= f.order
        return out
