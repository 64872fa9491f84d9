import logging
import math
from functools import reduce
from math import comb
from typing import List, Optional, Tuple

import numpy as np

from config import settings
from models.certificate import (
    CertifiedMatrix,
    CheckResult,
    ConstructibilityDecision,
    ConstructibilityStatus,
    ConstructionRecipe,
    RecipeFactor,
    SkCertificate,
    Verdict,
)
from models.hadamard import OrthFamily
from models.latin import LatinSquare
from models.matrices import PmOneMatrix
from models.spectrum import Inertia
from services.hadamard_service import H2, HadamardService
from services.latin_service import LatinService
from services.spectra_service import SpectraService
from utils.errors import CertificationError, OddOrderUnsupported
from utils.exact_linalg import kron, minpoly_zero_pm_check, sum_of_squares, trace
from utils.number_theory import is_prime, is_square, two_adic_split

logger = logging.getLogger(__name__)

K = np.array([[1, -1], [-1, 1]], dtype=np.int64)


class ConstructionService:
    """Latin-square block constructions, exact S_k certification and the S_k algebra"""

    def __init__(
        self,
        hadamard_service: Optional[HadamardService] = None,
        latin_service: Optional[LatinService] = None,
        spectra_service: Optional[SpectraService] = None,
    ):
        self.hadamard = hadamard_service or HadamardService()
        self.latin = latin_service or LatinService()
        self.spectra = spectra_service or SpectraService()

    # ------------------------------------------------------------------
    # Block constructions
    # ------------------------------------------------------------------

    @staticmethod
    def assemble(latin: LatinSquare, blocks: List[np.ndarray]) -> PmOneMatrix:
        """Replace symbol p of the Latin square by block A_p."""
        if len(blocks) != latin.size:
            raise ValueError(f"Need {latin.size} blocks, got {len(blocks)}")
        grid = [[blocks[latin.symbol(i, j) - 1] for j in range(latin.size)] for i in range(latin.size)]
        return PmOneMatrix(np.block(grid))

    @staticmethod
    def thkhn_blocks(family: OrthFamily) -> List[np.ndarray]:
        """A_i = -x_i x_i^T for vectors orthogonal to the all-ones vector."""
        return [-np.outer(x, x).astype(np.int64) for x in family.vectors]

    @staticmethod
    def thj_blocks(family: OrthFamily) -> List[np.ndarray]:
        """A_1 = -J_n, A_i = x_i x_i^T for the remaining vectors."""
        n = family.dimension
        rest = [np.outer(x, x).astype(np.int64) for x in family.vectors[1:]]
        return [-np.ones((n, n), dtype=np.int64)] + rest

    @staticmethod
    def _inertia(s: int, n: int, diff: int) -> Inertia:
        plus = (s * s + diff) // 2
        minus = (s * s - diff) // 2
        return Inertia(plus=plus, zero=s * n - s * s, minus=minus)

    @staticmethod
    def _misprint_note(printed: int, derived: int) -> List[str]:
        if printed == derived:
            return []
        return [f"printed positive-eigenvalue count {printed} differs from the trace-derived count {derived}"]

    def build_thkhn(self, s: int, n: Optional[int] = None) -> Tuple[PmOneMatrix, ConstructionRecipe]:
        """
        Symmetric (-1,1)-matrix of order sn with diagonal -1, zero rowsums and
        s^2 nonzero eigenvalues of modulus n.

        Blocks -x_i x_i^T over the last s rows of a normalized Hadamard matrix,
        placed by the back-circulant square. trace = -sn gives n_plus - n_minus = -s.
        """
        if s < 2:
            raise ValueError(f"s must be at least 2, got {s}")
        family = self.hadamard.orth_family(s, include_allones=False, n=n)
        latin = self.latin.back_circulant(s)
        b = self.assemble(latin, self.thkhn_blocks(family))

        expected = self._inertia(s, family.dimension, -s)
        recipe = ConstructionRecipe(
            family="thKHN",
            s=s,
            n=family.dimension,
            hadamard_source=family.source,
            latin_source="back_circulant",
            expected_inertia=expected,
            printed_positive_count=comb(s - 1, 2),
            notes=self._misprint_note(comb(s - 1, 2), expected.plus),
        )
        logger.info(f"Built thKHN matrix: s={s}, n={family.dimension}, order={b.order}")
        return b, recipe

    def build_thj(self, s: int, n: Optional[int] = None) -> Tuple[PmOneMatrix, ConstructionRecipe]:
        """
        Order-sn matrix with diagonal +1 and the all-ones vector as eigenvector for -n.

        A_1 = -J_n sits off the diagonal; the constant-diagonal square puts A_s
        (diagonal +1) on every diagonal block, so trace = sn.
        """
        if s < 2:
            raise ValueError(f"s must be at least 2, got {s}")
        if s % 2 == 1:
            raise OddOrderUnsupported(f"thj needs a constant-diagonal symmetric Latin square; s={s} is odd")
        family = self.hadamard.orth_family(s, include_allones=True, n=n)
        latin = self.latin.const_diag_symmetric(s)
        b = self.assemble(latin, self.thj_blocks(family))

        expected = self._inertia(s, family.dimension, s)
        recipe = ConstructionRecipe(
            family="thj",
            s=s,
            n=family.dimension,
            hadamard_source=family.source,
            latin_source="const_diag",
            expected_inertia=expected,
            printed_positive_count=comb(s - 1, 2),
            notes=self._misprint_note(comb(s - 1, 2), expected.plus),
        )
        logger.info(f"Built thj matrix: s={s}, n={family.dimension}, order={b.order}")
        return b, recipe

    def build_thj1(self, s: int, n: Optional[int] = None) -> Tuple[PmOneMatrix, ConstructionRecipe]:
        """
        Regular order-sn matrix with all rowsums -n, blocks as in build_thj placed
        by the back-circulant square.

        n_plus - n_minus = s - 2*d1 where d1 counts diagonal cells holding symbol 1
        (d1 = 1 for odd s, 2 for even s).
        """
        if s < 2:
            raise ValueError(f"s must be at least 2, got {s}")
        family = self.hadamard.orth_family(s, include_allones=True, n=n)
        latin = self.latin.back_circulant(s)
        b = self.assemble(latin, self.thj_blocks(family))

        d1 = latin.diagonal().count(1)
        expected = self._inertia(s, family.dimension, s - 2 * d1)
        notes = self._misprint_note(comb(s - 1, 2) + 1, expected.plus)
        if d1 != 1:
            notes.append(
                f"symbol 1 occupies {d1} diagonal cells, so n_plus - n_minus = {s - 2 * d1} instead of s - 2 = {s - 2}"
            )
        recipe = ConstructionRecipe(
            family="thj1",
            s=s,
            n=family.dimension,
            hadamard_source=family.source,
            latin_source="back_circulant",
            expected_inertia=expected,
            printed_positive_count=comb(s - 1, 2) + 1,
            notes=notes,
        )
        logger.info(f"Built thj1 matrix: s={s}, n={family.dimension}, order={b.order}")
        return b, recipe

    def rebuild(self, recipe: ConstructionRecipe) -> PmOneMatrix:
        builders = {"thKHN": self.build_thkhn, "thj": self.build_thj, "thj1": self.build_thj1}
        return builders[recipe.family](recipe.s, recipe.n)[0]

    # ------------------------------------------------------------------
    # Certification
    # ------------------------------------------------------------------

    @staticmethod
    def inertia_from_trace(k: int, n: int, tr: int) -> Tuple[Optional[Tuple[int, int]], str]:
        """
        (n_plus, n_minus) forced by trace(B) for a member of S_k of order n.

        Square k: n_plus - n_minus = sqrt(k)*trace/n must be an integer of the
        parity of k. Non-square k: trace must vanish and n_plus = n_minus.
        """
        r = math.isqrt(k)
        if r * r == k:
            if (tr * r) % n != 0:
                return None, f"sqrt(k)*trace/n = {tr * r}/{n} is not an integer"
            d = tr * r // n
            if abs(d) > k or (k + d) % 2 != 0:
                return None, f"n_plus - n_minus = {d} is incompatible with k = {k}"
            return ((k + d) // 2, (k - d) // 2), f"n_plus - n_minus = {d}"
        if tr != 0:
            return None, f"non-square k = {k} forces trace 0, got {tr}"
        if k % 2 != 0:
            return None, f"odd non-square k = {k} cannot split evenly"
        return (k // 2, k // 2), "non-square k: n_plus = n_minus"

    def sk_certify(self, b: PmOneMatrix, k: int, mode: str = "exact") -> SkCertificate:
        """
        Membership of b in S_k.

        exact: k*B^3 == n^2*B entrywise, trace(B^2) == n^2, and inertia derived
        from trace(B). float: singular values compared with {n/sqrt(k) x k, 0 x (n-k)}.
        """
        if k < 1:
            raise ValueError(f"k must be positive, got {k}")
        if mode not in ("exact", "float"):
            raise ValueError(f"Unknown certification mode: {mode}")
        if mode == "float":
            return self._certify_float(b, k)

        n = b.order
        checks: List[CheckResult] = []
        checks.append(CheckResult(name="order_bound", passed=k <= n, detail=f"k={k}, order={n}"))

        minpoly = minpoly_zero_pm_check(b, n * n, k)
        checks.append(CheckResult(
            name="minpoly",
            passed=minpoly,
            detail=f"{k}*B^3 {'==' if minpoly else '!='} {n * n}*B",
        ))

        squares = sum_of_squares(b)
        checks.append(CheckResult(
            name="trace_square",
            passed=squares == n * n,
            detail=f"trace(B^2) = {squares}, n^2 = {n * n}",
        ))

        counts, detail = self.inertia_from_trace(k, n, trace(b))
        checks.append(CheckResult(name="inertia_integrality", passed=counts is not None, detail=detail))

        if all(c.passed for c in checks):
            plus, minus = counts
            inertia = Inertia(plus=plus, zero=n - k, minus=minus)
            verdict = Verdict.MEMBER
        else:
            inertia = self.spectra.inertia(b)
            verdict = Verdict.NON_MEMBER

        logger.info(f"Certified order-{n} matrix against S_{k}: {verdict.value}")
        return SkCertificate(k=k, order=n, verdict=verdict, inertia=inertia, checks=checks, mode="exact")

    def _certify_float(self, b: PmOneMatrix, k: int) -> SkCertificate:
        n = b.order
        spectrum = self.spectra.eigen_sym(b)
        singular = spectrum.singular_values()
        checks: List[CheckResult] = [
            CheckResult(name="order_bound", passed=k <= n, detail=f"k={k}, order={n}")
        ]

        if k <= n:
            target = n / math.sqrt(k)
            expected = [target] * k + [0.0] * (n - k)
            deviation = max(abs(x - y) for x, y in zip(singular, expected))
        else:
            deviation = math.inf
        tolerance = settings.FLOAT_MEMBERSHIP_TOLERANCE * n
        checks.append(CheckResult(
            name="singular_spectrum",
            passed=deviation <= tolerance,
            detail=f"max deviation {deviation:.3e} (tolerance {tolerance:.1e})",
        ))

        if deviation <= tolerance:
            verdict = Verdict.MEMBER
        elif deviation >= settings.FLOAT_INDETERMINATE_BAND * n:
            verdict = Verdict.NON_MEMBER
        else:
            verdict = Verdict.INDETERMINATE
        return SkCertificate(k=k, order=n, verdict=verdict, inertia=spectrum.inertia(),
                             checks=checks, mode="float")

    def certified(self, b: PmOneMatrix, k: int) -> CertifiedMatrix:
        certificate = self.sk_certify(b, k)
        if not certificate.is_member:
            failed = [c.name for c in certificate.checks if not c.passed]
            raise CertificationError(f"Order-{b.order} matrix is not in S_{k}; failed checks: {failed}")
        return CertifiedMatrix(matrix=b, certificate=certificate)

    # ------------------------------------------------------------------
    # S_k algebra
    # ------------------------------------------------------------------

    @staticmethod
    def _require_member(a: CertifiedMatrix) -> None:
        if not a.certificate.is_member:
            raise CertificationError(f"Input of order {a.matrix.order} carries no S_{a.k} member certificate")

    def sk_kron(self, a: CertifiedMatrix, b: CertifiedMatrix) -> CertifiedMatrix:
        """A in S_k, B in S_l gives A (x) B in S_kl; the product is re-certified."""
        self._require_member(a)
        self._require_member(b)
        product = PmOneMatrix(kron(a.matrix, b.matrix))
        return self.certified(product, a.k * b.k)

    def sk_double(self, a: CertifiedMatrix) -> CertifiedMatrix:
        """K (x) (H_2 (x) A): order 4n, member of S_2k, zero rowsums, balanced inertia."""
        self._require_member(a)
        doubled = PmOneMatrix(np.kron(K, np.kron(H2, a.matrix.entries)))
        result = self.certified(doubled, 2 * a.k)
        inertia = result.certificate.inertia
        if inertia.plus != inertia.minus:
            raise CertificationError(f"Doubled matrix has unbalanced inertia {inertia}")
        return result

    def negation_certificate(self, a: CertifiedMatrix) -> CertifiedMatrix:
        """-B stays in S_k with n_plus and n_minus swapped."""
        self._require_member(a)
        negated = self.certified(a.matrix.negated(), a.k)
        swapped = a.certificate.inertia
        if (negated.certificate.inertia.plus, negated.certificate.inertia.minus) != (swapped.minus, swapped.plus):
            raise CertificationError("Negation did not swap the inertia")
        return negated

    def sk_constructible(self, k: int) -> ConstructibilityDecision:
        """
        Decide whether a recipe s^2 * 2^a * (2(p+1))^b (b in {0, 1}, p prime = 1 mod 4)
        realizes k; odd non-square k is obstructed.
        """
        if k < 1:
            raise ValueError(f"k must be positive, got {k}")
        if k == 1:
            return ConstructibilityDecision(
                k=1, status=ConstructibilityStatus.CONSTRUCTIBLE,
                factors=[RecipeFactor(kind="J1", parameter=1, k=1, order=1)],
                reason="J_1 is in S_1",
            )
        if k % 2 == 1 and not is_square(k):
            return ConstructibilityDecision(
                k=k, status=ConstructibilityStatus.OBSTRUCTED,
                reason=f"k = {k} is odd and not a perfect square; a member would need n_plus = n_minus",
            )

        paley_options: List[Optional[int]] = [None]
        paley_options += [p for p in range(5, k // 2, 4) if k % (2 * (p + 1)) == 0 and is_prime(p)]

        candidates: List[List[RecipeFactor]] = []
        for p in paley_options:
            rest = k if p is None else k // (2 * (p + 1))
            top, _ = two_adic_split(rest)
            for a in range(top + 1):
                m = rest // (2 ** a)
                if not is_square(m):
                    continue
                s = math.isqrt(m)
                factors: List[RecipeFactor] = []
                if s >= 2:
                    n = self.hadamard.smallest_family_order(s, include_allones=False)
                    factors.append(RecipeFactor(kind="thkhn", parameter=s, k=s * s, order=s * n))
                if a >= 1:
                    factors.append(RecipeFactor(kind="sylvester", parameter=a, k=2 ** a, order=2 ** a))
                if p is not None:
                    factors.append(RecipeFactor(kind="paley2", parameter=p, k=2 * (p + 1), order=2 * (p + 1)))
                candidates.append(factors)

        if not candidates:
            return ConstructibilityDecision(
                k=k, status=ConstructibilityStatus.UNKNOWN,
                reason="no recipe of the form s^2 * 2^a * (2(p+1))^b with p prime = 1 mod 4",
            )

        def order_of(factors: List[RecipeFactor]) -> int:
            return reduce(lambda x, f: x * f.order, factors, 1)

        best = min(candidates, key=lambda fs: (order_of(fs), len(fs)))
        decision = ConstructibilityDecision(k=k, status=ConstructibilityStatus.CONSTRUCTIBLE, factors=best)
        decision.reason = f"k = {k} realized as {decision.recipe} (order {order_of(best)})"
        return decision

    def build_sk_member(self, k: int) -> CertifiedMatrix:
        decision = self.sk_constructible(k)
        if decision.status != ConstructibilityStatus.CONSTRUCTIBLE:
            raise ValueError(f"No construction for S_{k}: {decision.reason}")

        members: List[CertifiedMatrix] = []
        for factor in decision.factors:
            if factor.kind == "J1":
                matrix = PmOneMatrix.ones(1)
            elif factor.kind == "sylvester":
                matrix = self.hadamard.sylvester(factor.parameter)
            elif factor.kind == "paley2":
                matrix = self.hadamard.paley2(factor.parameter)
            else:
                matrix = self.build_thkhn(factor.parameter)[0]
            members.append(self.certified(PmOneMatrix(matrix), factor.k))

        logger.info(f"S_{k} member from recipe {decision.recipe}")
        return reduce(self.sk_kron, members)
