import logging
from typing import List

from config import settings
from models.latin import LatinReport, LatinSquare
from utils.errors import ConstDiagImpossible

logger = logging.getLogger(__name__)


class LatinService:
    """Symmetric Latin squares used to place blocks in the (-1,1) constructions"""

    @staticmethod
    def _check_size(s: int) -> None:
        if s < 1:
            raise ValueError(f"Latin square size must be positive, got {s}")
        if s > settings.LATIN_MAX_SIZE:
            raise ValueError(f"Latin square size {s} exceeds cap {settings.LATIN_MAX_SIZE}")

    def back_circulant(self, s: int) -> LatinSquare:
        """l(i,j) = ((i+j) mod s) + 1 with 1-based i, j."""
        self._check_size(s)
        cells = [[((i + j) % s) + 1 for j in range(1, s + 1)] for i in range(1, s + 1)]
        return LatinSquare(size=s, cells=cells)

    def const_diag_symmetric(self, s: int) -> LatinSquare:
        """
        Symmetric Latin square of even order with the symbol s on the whole diagonal.

        For 1-based i, j < s and i != j the cell is ((i+j) mod (s-1)) + 1; the
        last row and column carry (2j mod (s-1)) + 1.
        """
        self._check_size(s)
        if s % 2 == 1:
            raise ConstDiagImpossible(
                f"No symmetric Latin square of odd order {s} has a constant diagonal"
            )
        m = s - 1
        cells = [[0] * s for _ in range(s)]
        for i in range(1, s + 1):
            for j in range(1, s + 1):
                if i == j:
                    value = s
                elif i < s and j < s:
                    value = ((i + j) % m) + 1
                elif i == s:
                    value = ((2 * j) % m) + 1
                else:
                    value = ((2 * i) % m) + 1
                cells[i - 1][j - 1] = value
        return LatinSquare(size=s, cells=cells)

    def validate(self, l: LatinSquare) -> LatinReport:
        s = l.size
        symbols = set(range(1, s + 1))
        failures: List[str] = []

        for i, row in enumerate(l.cells):
            if set(row) != symbols:
                failures.append(f"row {i + 1} does not contain every symbol once")
        for j in range(s):
            if {l.cells[i][j] for i in range(s)} != symbols:
                failures.append(f"column {j + 1} does not contain every symbol once")

        is_symmetric = all(l.cells[i][j] == l.cells[j][i] for i in range(s) for j in range(i + 1, s))
        if not is_symmetric:
            failures.append("square is not symmetric")

        diagonal = l.diagonal()
        constant = diagonal[0] if len(set(diagonal)) == 1 else None
        return LatinReport(
            is_latin=not any(f.startswith(("row", "column")) for f in failures),
            is_symmetric=is_symmetric,
            diagonal_constant=constant,
            diagonal_transversal=set(diagonal) == symbols,
            failures=failures,
        )

    @staticmethod
    def render_text(l: LatinSquare) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in l.cells) + "\n"
