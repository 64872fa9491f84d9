from typing import List, Optional
from pydantic import BaseModel, Field, model_validator


class LatinSquare(BaseModel):
    """
    Square array over the symbols 1..size, stored 0-indexed by cell.

    Shape and symbol range are enforced here; the Latin property itself is
    reported by LatinService.validate so broken squares can be inspected.
    """

    size: int = Field(..., ge=1)
    cells: List[List[int]]

    @model_validator(mode='after')
    def check_shape(self):
        s = self.size
        if len(self.cells) != s or any(len(row) != s for row in self.cells):
            raise ValueError(f"Latin square of size {s} needs {s}x{s} cells")
        for row in self.cells:
            for symbol in row:
                if not 1 <= symbol <= s:
                    raise ValueError(f"Symbol {symbol} outside 1..{s}")
        return self

    def symbol(self, i: int, j: int) -> int:
        return self.cells[i][j]

    def diagonal(self) -> List[int]:
        return [self.cells[i][i] for i in range(self.size)]


class LatinReport(BaseModel):
    is_latin: bool
    is_symmetric: bool
    diagonal_constant: Optional[int] = None
    diagonal_transversal: bool = False
    failures: List[str] = Field(default_factory=list)
