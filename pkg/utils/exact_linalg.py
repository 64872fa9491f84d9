"""
Exact integer kernel over dense int64 arrays.

Every product is preceded by a magnitude bound; when the bound leaves the
signed 64-bit range a MatrixOverflowError is raised instead of letting
numpy wrap around.
"""

import logging
from typing import List, Sequence, Union

import numpy as np

from config import settings
from models.matrices import IntSymMatrix, PmOneMatrix
from utils.errors import MatrixOverflowError

logger = logging.getLogger(__name__)

INT64_MAX = int(np.iinfo(np.int64).max)

MatrixLike = Union[IntSymMatrix, np.ndarray, Sequence[Sequence[int]]]


def as_int_array(m: MatrixLike) -> np.ndarray:
    if isinstance(m, IntSymMatrix):
        return m.entries
    arr = np.asarray(m)
    if arr.dtype.kind not in "iub":
        raise ValueError(f"Integer matrix expected, got dtype {arr.dtype}")
    return arr.astype(np.int64, copy=False)


def _max_abs(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    return int(np.max(np.abs(arr)))


def _check(bound: int, what: str) -> None:
    if bound > INT64_MAX:
        raise MatrixOverflowError(f"{what}: magnitude bound {bound} exceeds the 64-bit range")


def checked_scale(a: MatrixLike, c: int) -> np.ndarray:
    arr = as_int_array(a)
    _check(_max_abs(arr) * abs(int(c)), "scalar multiple")
    return arr * np.int64(c)


def kron(a: IntSymMatrix, b: IntSymMatrix) -> IntSymMatrix:
    x, y = as_int_array(a), as_int_array(b)
    _check(_max_abs(x) * _max_abs(y), "kron")
    return IntSymMatrix(np.kron(x, y))


def mat_mul(a: MatrixLike, b: MatrixLike) -> np.ndarray:
    x, y = as_int_array(a), as_int_array(b)
    if x.ndim != 2 or y.ndim != 2 or x.shape[1] != y.shape[0]:
        raise ValueError(f"Non-conformable shapes {x.shape} and {y.shape}")
    _check(x.shape[1] * _max_abs(x) * _max_abs(y), "mat_mul")
    return x @ y


def mat_pow(a: MatrixLike, e: int) -> Union[IntSymMatrix, np.ndarray]:
    """
    Exact integer power a^e for 1 <= e <= 4.

    Symmetric input gives a symmetric result, returned as IntSymMatrix.
    """
    if not 1 <= e <= settings.MAX_POWER_EXPONENT:
        raise ValueError(f"Exponent must be in [1, {settings.MAX_POWER_EXPONENT}], got {e}")
    base = as_int_array(a)
    result = base
    for _ in range(e - 1):
        result = mat_mul(result, base)
    if isinstance(a, IntSymMatrix):
        return IntSymMatrix(result)
    return result


def trace(a: MatrixLike) -> int:
    arr = as_int_array(a)
    _check(arr.shape[0] * _max_abs(arr), "trace")
    return int(np.trace(arr))


def rowsums(a: MatrixLike) -> List[int]:
    arr = as_int_array(a)
    _check(arr.shape[1] * _max_abs(arr), "rowsums")
    return [int(x) for x in arr.sum(axis=1)]


def sum_of_squares(a: MatrixLike) -> int:
    arr = as_int_array(a)
    _check(arr.size * _max_abs(arr) ** 2, "sum of squares")
    return int(np.sum(arr * arr))


def signed_permute(a: PmOneMatrix, perm: Sequence[int], signs: Sequence[int]) -> PmOneMatrix:
    """result[i][j] = signs[i] * signs[j] * a[perm[i]][perm[j]]"""
    n = a.order
    p = list(perm)
    if sorted(p) != list(range(n)):
        raise ValueError(f"Not a permutation of 0..{n - 1}: {p}")
    d = np.asarray(signs, dtype=np.int64)
    if d.shape != (n,) or not np.all(np.abs(d) == 1):
        raise ValueError("Signs must be a vector of +1/-1 entries of matching length")
    permuted = a.entries[np.ix_(p, p)]
    return PmOneMatrix(d[:, None] * permuted * d[None, :])


def minpoly_zero_pm_check(b: MatrixLike, num: int, den: int) -> bool:
    """True iff den*B^3 == num*B, i.e. every eigenvalue lies in {0, +-sqrt(num/den)}."""
    if num <= 0 or den <= 0:
        raise ValueError("num and den must be positive")
    arr = as_int_array(b)
    cube = mat_mul(mat_mul(arr, arr), arr)
    return bool(np.array_equal(checked_scale(cube, den), checked_scale(arr, num)))
