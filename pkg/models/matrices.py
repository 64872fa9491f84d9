import numpy as np
from typing import Iterable, List, Tuple


class IntSymMatrix:
    """
    Immutable dense symmetric integer matrix.

    Entries are stored row-major as a read-only int64 array; symmetry and
    integrality are checked once, at construction.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries):
        if isinstance(entries, IntSymMatrix):
            arr = np.array(entries.entries, dtype=np.int64)
        else:
            arr = np.array(entries)
            if arr.dtype.kind == "f":
                if not np.all(np.isfinite(arr)) or not np.all(arr == np.round(arr)):
                    raise ValueError("Matrix entries must be integers")
            elif arr.dtype.kind not in "iub":
                raise ValueError(f"Unsupported entry type: {arr.dtype}")
            arr = arr.astype(np.int64)

        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ValueError(f"Expected a non-empty square matrix, got shape {arr.shape}")
        if not np.array_equal(arr, arr.T):
            raise ValueError("Matrix is not symmetric")

        arr.setflags(write=False)
        self._entries = arr
        self._validate()

    def _validate(self) -> None:
        pass

    @property
    def order(self) -> int:
        return int(self._entries.shape[0])

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    def to_list(self) -> List[List[int]]:
        return self._entries.tolist()

    def diagonal(self) -> List[int]:
        return [int(x) for x in np.diag(self._entries)]

    def as_float(self) -> np.ndarray:
        return self._entries.astype(np.float64)

    @classmethod
    def identity(cls, n: int) -> "IntSymMatrix":
        return IntSymMatrix(np.eye(n, dtype=np.int64))

    @classmethod
    def ones(cls, n: int) -> "IntSymMatrix":
        return IntSymMatrix(np.ones((n, n), dtype=np.int64))

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntSymMatrix):
            return NotImplemented
        return self.order == other.order and bool(np.array_equal(self._entries, other._entries))

    def __hash__(self) -> int:
        return hash((self.order, self._entries.tobytes()))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(order={self.order})"


class PmOneMatrix(IntSymMatrix):
    """Symmetric matrix with every entry in {-1, +1}."""

    __slots__ = ()

    def _validate(self) -> None:
        if not np.all(np.abs(self._entries) == 1):
            raise ValueError("Entries of a (-1,1)-matrix must be -1 or +1")

    def negated(self) -> "PmOneMatrix":
        return PmOneMatrix(-self._entries)

    @classmethod
    def ones(cls, n: int) -> "PmOneMatrix":
        return PmOneMatrix(np.ones((n, n), dtype=np.int64))


class Graph(IntSymMatrix):
    """Adjacency matrix of a simple graph: 0/1 entries and a zero diagonal."""

    __slots__ = ()

    def _validate(self) -> None:
        if not np.all((self._entries == 0) | (self._entries == 1)):
            raise ValueError("Adjacency entries must be 0 or 1")
        if np.any(np.diag(self._entries) != 0):
            raise ValueError("Adjacency matrix must have a zero diagonal")

    @property
    def edge_count(self) -> int:
        return int(self._entries.sum()) // 2

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return Graph(np.ones((n, n), dtype=np.int64) - np.eye(n, dtype=np.int64))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return Graph(np.zeros((n, n), dtype=np.int64))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        arr = np.zeros((n, n), dtype=np.int64)
        for u, v in edges:
            if u == v:
                raise ValueError(f"Loop at vertex {u}")
            arr[u, v] = arr[v, u] = 1
        return Graph(arr)

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


class HadamardMatrix(PmOneMatrix):
    """Symmetric Hadamard matrix; `source` names the catalog recipe that built it."""

    __slots__ = ("source",)

    def __init__(self, entries, source: str = "file"):
        self.source = source
        super().__init__(entries)

    def _validate(self) -> None:
        super()._validate()
        n = self.order
        gram = self._entries @ self._entries.T
        if not np.array_equal(gram, n * np.eye(n, dtype=np.int64)):
            raise ValueError(f"Matrix of order {n} does not satisfy H*H^T = {n}*I")

    def is_normalized(self) -> bool:
        return bool(np.all(self._entries[0, :] == 1) and np.all(self._entries[:, 0] == 1))
