import logging
import math
from typing import Iterable, List, Optional, Union

import numpy as np

from config import settings
from models.matrices import IntSymMatrix
from models.spectrum import Inertia, Spectrum, SpectrumReport
from utils.errors import NonConvergenceError

logger = logging.getLogger(__name__)

SymmetricInput = Union[IntSymMatrix, np.ndarray]


class SpectraService:
    """Cyclic Jacobi eigensolver and the spectral quantities derived from it"""

    def __init__(self, tolerance_scale: Optional[float] = None, max_sweeps: Optional[int] = None):
        self.tolerance_scale = settings.EIGEN_TOLERANCE_SCALE if tolerance_scale is None else tolerance_scale
        self.max_sweeps = settings.JACOBI_MAX_SWEEPS if max_sweeps is None else max_sweeps

    @staticmethod
    def _as_float(m: SymmetricInput) -> np.ndarray:
        arr = m.as_float() if isinstance(m, IntSymMatrix) else np.array(m, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"Square matrix expected, got shape {arr.shape}")
        if not np.allclose(arr, arr.T, rtol=0.0, atol=1e-12):
            raise ValueError("Matrix is not symmetric")
        return arr

    def default_tolerance(self, order: int) -> float:
        return self.tolerance_scale * order

    def eigen_sym(self, m: SymmetricInput, tolerance: Optional[float] = None) -> Spectrum:
        """
        Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

        Args:
            m: symmetric integer matrix (or float array)
            tolerance: bound on the off-diagonal Frobenius residual; defaults to 1e-9 * order

        Returns:
            Spectrum with values sorted descending

        Raises:
            NonConvergenceError when the sweep budget runs out (carries the residual)
        """
        a = self._as_float(m).copy()
        n = a.shape[0]
        tol = self.default_tolerance(n) if tolerance is None else tolerance

        for sweep in range(self.max_sweeps + 1):
            residual = float(np.linalg.norm(a - np.diag(np.diag(a))))
            if residual <= tol:
                break
            if sweep == self.max_sweeps:
                logger.error(f"Jacobi did not converge at order {n}: residual {residual:.3e}")
                raise NonConvergenceError(
                    f"Jacobi eigensolver did not converge in {self.max_sweeps} sweeps "
                    f"(residual {residual:.3e} > {tol:.3e})",
                    residual,
                )
            for p in range(n - 1):
                for q in range(p + 1, n):
                    self._rotate(a, p, q)

        values = sorted((float(x) for x in np.diag(a)), reverse=True)
        return Spectrum(values=values, tolerance=tol)

    @staticmethod
    def _rotate(a: np.ndarray, p: int, q: int) -> None:
        apq = a[p, q]
        if apq == 0.0:
            return
        theta = (a[q, q] - a[p, p]) / (2.0 * apq)
        if abs(theta) > 1e150:
            t = 0.5 / theta
        else:
            t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
            if theta < 0:
                t = -t
        c = 1.0 / math.sqrt(t * t + 1.0)
        s = t * c

        col_p = a[:, p].copy()
        col_q = a[:, q].copy()
        a[:, p] = c * col_p - s * col_q
        a[:, q] = s * col_p + c * col_q
        row_p = a[p, :].copy()
        row_q = a[q, :].copy()
        a[p, :] = c * row_p - s * row_q
        a[q, :] = s * row_p + c * row_q
        a[p, q] = a[q, p] = 0.0

    def singular_values(self, m: SymmetricInput) -> List[float]:
        return self.eigen_sym(m).singular_values()

    def ky_fan(self, m: SymmetricInput, k: int) -> float:
        return self.eigen_sym(m).ky_fan(k)

    def lambda_k(self, m: SymmetricInput, k: int) -> float:
        return self.eigen_sym(m).lambda_k(k)

    def lambda_from_bottom(self, m: SymmetricInput, k: int) -> float:
        return self.eigen_sym(m).lambda_from_bottom(k)

    def inertia(self, m: SymmetricInput) -> Inertia:
        return self.eigen_sym(m).inertia()

    def spectrum_report(self, m: SymmetricInput, ky_fan_ks: Iterable[int] = ()) -> SpectrumReport:
        spectrum = self.eigen_sym(m)
        return SpectrumReport(
            order=spectrum.order,
            tolerance=spectrum.tolerance,
            eigenvalues=spectrum.values,
            singular_values=spectrum.singular_values(),
            ky_fan={k: spectrum.ky_fan(k) for k in ky_fan_ks},
        )

    @staticmethod
    def batch_eigenvalues(stack: np.ndarray) -> np.ndarray:
        """Descending eigenvalues of a stack of symmetric matrices (LAPACK, for graph universes)."""
        return np.linalg.eigvalsh(np.asarray(stack, dtype=np.float64))[..., ::-1]
