import logging
from typing import Iterator, List, Optional, Tuple

import numpy as np

from config import settings
from models.hadamard import OrthFamily
from models.matrices import HadamardMatrix
from utils.errors import CatalogExhausted, MatrixOverflowError
from utils.number_theory import is_prime, legendre

logger = logging.getLogger(__name__)

H2 = np.array([[1, 1], [1, -1]], dtype=np.int64)


class HadamardService:
    """Symmetric Hadamard matrices (Sylvester, Paley-II) and orthogonal vector families"""

    def __init__(self, order_cap: Optional[int] = None):
        self.order_cap = order_cap or settings.HADAMARD_ORDER_CAP

    def sylvester(self, m: int) -> HadamardMatrix:
        """m-fold Kronecker power of H_2, order 2^m."""
        if m < 0:
            raise ValueError(f"Sylvester exponent must be nonnegative, got {m}")
        if m > settings.SYLVESTER_MAX_POWER or 2 ** m > self.order_cap:
            raise MatrixOverflowError(f"Sylvester order 2^{m} exceeds the order cap {self.order_cap}")
        h = np.ones((1, 1), dtype=np.int64)
        for _ in range(m):
            h = np.kron(h, H2)
        return HadamardMatrix(h, source=f"sylvester:{m}")

    def paley2(self, q: int) -> HadamardMatrix:
        """
        Symmetric Hadamard matrix of order 2(q+1) from the quadratic residues mod q.

        C is the symmetric conference matrix [[0, j^T], [j, Q]] with Jacobsthal
        matrix Q[i][j] = chi(j - i); the result is [[C+I, C-I], [C-I, -C-I]].
        """
        if not is_prime(q) or q % 2 == 0:
            raise ValueError(f"Paley-II needs an odd prime, got {q}")
        if q % 4 != 1:
            raise ValueError(f"Paley-II needs q = 1 mod 4, got {q} = {q % 4} mod 4")
        if 2 * (q + 1) > self.order_cap:
            raise MatrixOverflowError(f"Paley-II order {2 * (q + 1)} exceeds the order cap {self.order_cap}")

        chi = np.array([legendre(x, q) for x in range(q)], dtype=np.int64)
        idx = np.arange(q)
        jacobsthal = chi[(idx[None, :] - idx[:, None]) % q]

        c = np.zeros((q + 1, q + 1), dtype=np.int64)
        c[0, 1:] = 1
        c[1:, 0] = 1
        c[1:, 1:] = jacobsthal
        eye = np.eye(q + 1, dtype=np.int64)
        h = np.block([[c + eye, c - eye], [c - eye, -c - eye]])
        return HadamardMatrix(h, source=f"paley2:{q}")

    def regular_order4(self) -> HadamardMatrix:
        """J_4 - 2I_4: regular, diagonal -1, rowsums 2."""
        return HadamardMatrix(np.ones((4, 4), dtype=np.int64) - 2 * np.eye(4, dtype=np.int64),
                              source="regular:4")

    def normalize(self, h: HadamardMatrix) -> HadamardMatrix:
        """
        Sign changes making the first row and column all ones.

        Rows are scaled by h[i][0] and columns by h[0][0]*h[0][j]; for a
        symmetric input the result stays symmetric.
        """
        if h.is_normalized():
            return h
        arr = h.entries
        row_signs = arr[:, 0]
        col_signs = arr[0, 0] * arr[0, :]
        normalized = row_signs[:, None] * arr * col_signs[None, :]
        source = h.source if h.source.endswith("/normalized") else f"{h.source}/normalized"
        return HadamardMatrix(normalized, source=source)

    def catalog(self) -> List[Tuple[int, str]]:
        """Catalog orders ascending: Sylvester powers first, then Paley-II orders."""
        entries: List[Tuple[int, int, str]] = []
        m = 0
        while m <= settings.SYLVESTER_MAX_POWER and 2 ** m <= self.order_cap:
            entries.append((2 ** m, 0, f"sylvester:{m}"))
            m += 1
        q = 5
        while 2 * (q + 1) <= self.order_cap:
            if is_prime(q):
                entries.append((2 * (q + 1), 1, f"paley2:{q}"))
            q += 4
        return [(order, source) for order, _, source in sorted(entries)]

    def from_source(self, source: str) -> HadamardMatrix:
        base, _, suffix = source.partition("/")
        kind, _, param = base.partition(":")
        if kind == "sylvester":
            h = self.sylvester(int(param))
        elif kind == "paley2":
            h = self.paley2(int(param))
        elif kind == "regular" and param == "4":
            h = self.regular_order4()
        else:
            raise ValueError(f"Unknown Hadamard source: {source}")
        return self.normalize(h) if suffix == "normalized" else h

    def _catalog_entry(self, minimum: int, exact: Optional[int]) -> Tuple[int, str]:
        for order, source in self.catalog():
            if exact is not None and order == exact:
                return order, source
            if exact is None and order >= minimum:
                return order, source
        wanted = f"order {exact}" if exact is not None else f"an order >= {minimum}"
        raise CatalogExhausted(f"No catalog Hadamard matrix of {wanted} below cap {self.order_cap}")

    def smallest_family_order(self, s: int, include_allones: bool) -> int:
        return self._catalog_entry(s if include_allones else s + 1, None)[0]

    def orth_family(self, s: int, include_allones: bool, n: Optional[int] = None) -> OrthFamily:
        """
        s pairwise orthogonal rows of a normalized catalog Hadamard matrix.

        With include_allones the family is the first s rows (row 1 is all ones);
        otherwise it is the last s rows, each orthogonal to the all-ones vector.
        """
        if s < 1:
            raise ValueError(f"Family size must be positive, got {s}")
        required = s if include_allones else s + 1
        if n is not None and n < required:
            raise ValueError(f"Order {n} is too small for {s} vectors (needs >= {required})")

        order, source = self._catalog_entry(required, n)
        h = self.normalize(self.from_source(source)).entries
        rows = h[:s] if include_allones else h[order - s:]
        logger.info(f"Orthogonal family: s={s}, n={order}, source={source}, allones={include_allones}")
        return OrthFamily(
            dimension=order,
            vectors=[list(map(int, r)) for r in rows],
            includes_allones=include_allones,
            source=f"{source}/normalized",
        )
