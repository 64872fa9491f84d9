import hashlib
import logging
from pathlib import Path
from typing import List, Tuple, Union

import numpy as np

from config import settings
from models.matrices import Graph, IntSymMatrix, PmOneMatrix

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class MatrixFileCodec:
    """
    Parser and writer for the two text formats the tool exchanges.

    PMM: header `PMM 1`, the order, then n rows of `1`/`-1` tokens.
    ADJ: header `ADJ 1`, the order, then n rows of `0`/`1` tokens.
    Both use LF line endings and a single space between tokens.
    """

    @staticmethod
    def _split_body(text: str, header: str) -> Tuple[int, List[List[str]]]:
        if "\r" in text:
            raise ValueError("Matrix files must use LF line endings")
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines = lines[:-1]
        if len(lines) < 2:
            problem = "empty file" if not lines else "missing order line"
            raise ValueError(f"Malformed {header.split()[0]} file: {problem}")
        if lines[0] != header:
            raise ValueError(f"Expected header '{header}', got '{lines[0]}'")
        try:
            n = int(lines[1])
        except ValueError:
            raise ValueError(f"Order line must be a decimal integer, got '{lines[1]}'")
        if n < 1 or lines[1] != str(n):
            raise ValueError(f"Order must be a positive decimal integer, got '{lines[1]}'")
        rows = lines[2:]
        if len(rows) != n:
            raise ValueError(f"Expected {n} matrix rows, found {len(rows)}")

        tokens = []
        for idx, row in enumerate(rows):
            parts = row.split(" ")
            if len(parts) != n:
                raise ValueError(f"Row {idx + 1}: expected {n} tokens, found {len(parts)}")
            tokens.append(parts)
        return n, tokens

    @staticmethod
    def parse_pmm(text: str) -> PmOneMatrix:
        n, tokens = MatrixFileCodec._split_body(text, settings.PMM_HEADER)
        allowed = {"1": 1, "-1": -1}
        arr = np.zeros((n, n), dtype=np.int64)
        for i, row in enumerate(tokens):
            for j, tok in enumerate(row):
                if tok not in allowed:
                    raise ValueError(f"Row {i + 1}, column {j + 1}: invalid token '{tok}' (expected 1 or -1)")
                arr[i, j] = allowed[tok]
        if not np.array_equal(arr, arr.T):
            i, j = np.argwhere(arr != arr.T)[0]
            raise ValueError(f"Matrix is not symmetric at ({i + 1}, {j + 1})")
        return PmOneMatrix(arr)

    @staticmethod
    def parse_adj(text: str) -> Graph:
        n, tokens = MatrixFileCodec._split_body(text, settings.ADJ_HEADER)
        allowed = {"0": 0, "1": 1}
        arr = np.zeros((n, n), dtype=np.int64)
        for i, row in enumerate(tokens):
            for j, tok in enumerate(row):
                if tok not in allowed:
                    raise ValueError(f"Row {i + 1}, column {j + 1}: invalid token '{tok}' (expected 0 or 1)")
                arr[i, j] = allowed[tok]
        if np.any(np.diag(arr) != 0):
            i = int(np.flatnonzero(np.diag(arr))[0])
            raise ValueError(f"Adjacency matrix has a nonzero diagonal entry at vertex {i + 1}")
        if not np.array_equal(arr, arr.T):
            i, j = np.argwhere(arr != arr.T)[0]
            raise ValueError(f"Adjacency matrix is not symmetric at ({i + 1}, {j + 1})")
        return Graph(arr)

    @staticmethod
    def _serialize(m: IntSymMatrix, header: str) -> str:
        lines = [header, str(m.order)]
        lines.extend(" ".join(str(int(x)) for x in row) for row in m.entries)
        return "\n".join(lines) + "\n"

    @staticmethod
    def serialize_pmm(m: PmOneMatrix) -> str:
        if not isinstance(m, PmOneMatrix):
            m = PmOneMatrix(m)
        return MatrixFileCodec._serialize(m, settings.PMM_HEADER)

    @staticmethod
    def serialize_adj(g: Graph) -> str:
        if not isinstance(g, Graph):
            g = Graph(g)
        return MatrixFileCodec._serialize(g, settings.ADJ_HEADER)

    @staticmethod
    def read_pmm(path: PathLike) -> PmOneMatrix:
        logger.info(f"Reading PMM file {path}")
        return MatrixFileCodec.parse_pmm(Path(path).read_bytes().decode("ascii"))

    @staticmethod
    def read_adj(path: PathLike) -> Graph:
        logger.info(f"Reading ADJ file {path}")
        return MatrixFileCodec.parse_adj(Path(path).read_bytes().decode("ascii"))

    @staticmethod
    def write_pmm(path: PathLike, m: PmOneMatrix) -> str:
        """Writes the file and returns its sha256 hex digest."""
        data = MatrixFileCodec.serialize_pmm(m).encode("ascii")
        Path(path).write_bytes(data)
        logger.info(f"Wrote PMM file {path} (order {m.order})")
        return hashlib.sha256(data).hexdigest()

    @staticmethod
    def write_adj(path: PathLike, g: Graph) -> str:
        data = MatrixFileCodec.serialize_adj(g).encode("ascii")
        Path(path).write_bytes(data)
        logger.info(f"Wrote ADJ file {path} (order {g.order})")
        return hashlib.sha256(data).hexdigest()

    @staticmethod
    def read_any(path: PathLike) -> IntSymMatrix:
        """Dispatches on the header line: PMM files give a PmOneMatrix, ADJ files a Graph."""
        text = Path(path).read_bytes().decode("ascii")
        first = text.split("\n", 1)[0]
        if first == settings.PMM_HEADER:
            return MatrixFileCodec.parse_pmm(text)
        if first == settings.ADJ_HEADER:
            return MatrixFileCodec.parse_adj(text)
        raise ValueError(f"Unrecognized matrix file header '{first}' in {path}")
