from typing import List
from pydantic import BaseModel, Field, model_validator


class OrthFamily(BaseModel):
    """Pairwise orthogonal (-1,1)-vectors taken from rows of a normalized Hadamard matrix."""

    dimension: int = Field(..., ge=1)
    vectors: List[List[int]]
    includes_allones: bool
    source: str

    @model_validator(mode='after')
    def check_orthogonality(self):
        n = self.dimension
        for v in self.vectors:
            if len(v) != n or any(x not in (1, -1) for x in v):
                raise ValueError(f"Every vector must be a (-1,1)-vector of length {n}")
        for i, u in enumerate(self.vectors):
            for w in self.vectors[i + 1:]:
                if sum(a * b for a, b in zip(u, w)) != 0:
                    raise ValueError("Family vectors are not pairwise orthogonal")
        if self.includes_allones:
            if not self.vectors or any(x != 1 for x in self.vectors[0]):
                raise ValueError("First vector must be the all-ones vector")
        elif any(sum(v) != 0 for v in self.vectors):
            raise ValueError("Every vector must be orthogonal to the all-ones vector")
        return self

    @property
    def size(self) -> int:
        return len(self.vectors)
