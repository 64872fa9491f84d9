import logging
import math
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from config import settings
from models.certificate import CertifiedMatrix, CheckResult
from models.graph_build import BlowupSpec, BuiltGraph, GraphCertificate, ZeroDiag
from models.matrices import Graph, HadamardMatrix, PmOneMatrix
from models.spectrum import PointSpectrum, Spectrum
from services.construction_service import ConstructionService
from services.spectra_service import SpectraService
from utils.exact_linalg import checked_scale, rowsums

logger = logging.getLogger(__name__)


class GraphFactoryService:
    """Matrix-to-graph transforms and the extremal graph builders"""

    def __init__(
        self,
        construction_service: Optional[ConstructionService] = None,
        spectra_service: Optional[SpectraService] = None,
    ):
        self.spectra = spectra_service or SpectraService()
        self.constructions = construction_service or ConstructionService(spectra_service=self.spectra)

    # ------------------------------------------------------------------
    # Transforms
    # ------------------------------------------------------------------

    def half_shift(self, b: PmOneMatrix, t: int, sign: int, zero_diag: ZeroDiag = ZeroDiag.AUTO) -> Graph:
        """
        Graph with adjacency 1/2 (sign * B (x) J_t + J).

        With zero_diag=auto the diagonal of sign*B must be all -1 so the result
        already has a zero diagonal; force zeroes it afterwards.
        """
        if t < 1:
            raise ValueError(f"t must be positive, got {t}")
        if sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {sign}")
        zero_diag = ZeroDiag(zero_diag)

        shifted = np.kron(checked_scale(b, sign), np.ones((t, t), dtype=np.int64))
        if zero_diag == ZeroDiag.AUTO and np.any(np.diag(shifted) != -1):
            raise ValueError("zero_diag=auto needs sign*B to have a constant -1 diagonal")

        adjacency = (shifted + 1) // 2
        if zero_diag == ZeroDiag.FORCE:
            np.fill_diagonal(adjacency, 0)
        return Graph(adjacency)

    @staticmethod
    def doubling(a: PmOneMatrix) -> PmOneMatrix:
        """[[A, -A], [-A, A]]; every rowsum is zero."""
        arr = a.entries
        return PmOneMatrix(np.block([[arr, -arr], [-arr, arr]]))

    @staticmethod
    def blowup(g: Graph, spec: BlowupSpec) -> Graph:
        """Open: A (x) J_t. Closed: (A + I) (x) J_t - I."""
        n = g.order
        block = np.ones((spec.t, spec.t), dtype=np.int64)
        if not spec.closed:
            return Graph(np.kron(g.entries, block))
        eye = np.eye(n, dtype=np.int64)
        return Graph(np.kron(g.entries + eye, block) - np.eye(n * spec.t, dtype=np.int64))

    @staticmethod
    def blowup_spectrum(spectrum: Spectrum, spec: BlowupSpec) -> List[float]:
        """Eigenvalues of a blowup from those of the graph."""
        t, n = spec.t, spectrum.order
        if spec.closed:
            values = [t * (x + 1) - 1 for x in spectrum.values] + [-1.0] * ((t - 1) * n)
        else:
            values = [t * x for x in spectrum.values] + [0.0] * ((t - 1) * n)
        return sorted(values, reverse=True)

    @staticmethod
    def complement(g: Graph) -> Graph:
        n = g.order
        return Graph(np.ones((n, n), dtype=np.int64) - np.eye(n, dtype=np.int64) - g.entries)

    # ------------------------------------------------------------------
    # Certificate helpers
    # ------------------------------------------------------------------

    @staticmethod
    def _tolerance(order: int) -> float:
        return settings.FLOAT_MEMBERSHIP_TOLERANCE * max(order, 1)

    def _spectrum_claim(self, spectrum: Spectrum, expected: PointSpectrum) -> CheckResult:
        wanted = expected.values()
        if len(wanted) != spectrum.order:
            return CheckResult(name="expected_spectrum", passed=False,
                               detail=f"expected {len(wanted)} eigenvalues, got {spectrum.order}")
        deviation = max(abs(x - y) for x, y in zip(spectrum.values, wanted))
        return CheckResult(
            name="expected_spectrum",
            passed=deviation <= self._tolerance(spectrum.order),
            detail=f"max deviation {deviation:.3e}",
        )

    def _at_least(self, name: str, value: float, bound: float, order: int) -> CheckResult:
        return CheckResult(name=name, passed=value >= bound - self._tolerance(order),
                           detail=f"{value:.10g} >= {bound:.10g}")

    def _equals(self, name: str, value: float, target: float, order: int) -> CheckResult:
        return CheckResult(name=name, passed=abs(value - target) <= self._tolerance(order),
                           detail=f"{value:.10g} == {target:.10g}")

    # ------------------------------------------------------------------
    # Builders
    # ------------------------------------------------------------------

    def build_thp(self, s: int, t: int, n: Optional[int] = None) -> BuiltGraph:
        """Graph of order snt with lambda*_{s^2+1} = nt/2, from the thKHN matrix."""
        logger.info("=" * 80)
        logger.info(f"BUILDING thp GRAPH: s={s}, t={t}")
        logger.info("=" * 80)

        b, recipe = self.constructions.build_thkhn(s, n)
        n = recipe.n
        inertia = recipe.expected_inertia
        g = self.half_shift(b, t, 1, ZeroDiag.AUTO)
        order = g.order

        half = Fraction(n * t, 2)
        expected = PointSpectrum.from_pairs([
            (Fraction(s * n * t, 2), 1),
            (half, inertia.plus),
            (0, order - 1 - s * s),
            (-half, inertia.minus),
        ])
        spectrum = self.spectra.eigen_sym(g)
        singular = spectrum.singular_values()
        claims = [
            self._spectrum_claim(spectrum, expected),
            self._equals(f"lambda_star_{s * s + 1}", singular[s * s], float(half), order),
            self._equals("th1_bound_attained", singular[s * s], order / (2 * s), order),
        ]
        certificate = GraphCertificate(
            family="thp", parameters={"s": s, "n": n, "t": t}, order=order,
            expected_spectrum=expected.points, claims=claims,
        )
        logger.info(f"thp graph of order {order}: claims passed = {certificate.passed}")
        return BuiltGraph(graph=g, certificate=certificate)

    def build_thck(self, s: int, t: int, n: Optional[int] = None) -> BuiltGraph:
        """
        Graph A = 1/2 (J - B (x) J_t) over the thj matrix; its Ky Fan s^2-norm is
        (1+s)snt/2, attaining the Ky Fan upper bound.
        """
        logger.info("=" * 80)
        logger.info(f"BUILDING thck GRAPH: s={s}, t={t}")
        logger.info("=" * 80)

        logger.info("STEP 1: CONSTANT-DIAGONAL BLOCK MATRIX")
        b, recipe = self.constructions.build_thj(s, n)
        n = recipe.n
        plus_b, minus_b = recipe.expected_inertia.plus, recipe.expected_inertia.minus
        g = self.half_shift(b, t, -1, ZeroDiag.AUTO)
        order = g.order
        k = s * s

        half = Fraction(n * t, 2)
        expected = PointSpectrum.from_pairs([
            (Fraction((s + 1) * n * t, 2), 1),
            (half, minus_b - 1),
            (0, order - k),
            (-half, plus_b),
        ])
        spectrum = self.spectra.eigen_sym(g)
        ky_fan = spectrum.ky_fan(k)
        target = (1 + s) * s * n * t / 2

        logger.info("-" * 80)
        logger.info("STEP 2: CONVERSE CHECK J - 2A")
        logger.info("-" * 80)
        shifted = PmOneMatrix(np.ones((order, order), dtype=np.int64) - 2 * g.entries)
        converse = self.constructions.sk_certify(shifted, k)

        claims = [
            self._spectrum_claim(spectrum, expected),
            self._equals(f"ky_fan_{k}", ky_fan, target, order),
            self._equals("ky_fan_bound_attained", ky_fan, 0.5 * (1 + math.sqrt(k)) * order, order),
            CheckResult(name="converse_in_S_k", passed=converse.is_member,
                        detail=f"J - 2A certified {converse.verdict.value} for S_{k}"),
        ]
        certificate = GraphCertificate(
            family="thck", parameters={"s": s, "n": n, "t": t}, order=order,
            expected_spectrum=expected.points, claims=claims,
        )
        logger.info(f"thck graph of order {order}: Ky Fan {k}-norm {ky_fan:.6f}")
        return BuiltGraph(graph=g, certificate=certificate)

    def build_thck1(self, b: CertifiedMatrix, t: int) -> BuiltGraph:
        """
        Graph 1/2 (J - B (x) J_t) with zeroed diagonal over a regular member of S_k;
        Ky Fan k-norm at least (1+sqrt k) n t / 2 - k.
        """
        if not b.certificate.is_member:
            raise ValueError("thck1 needs a certified S_k member")
        sums = set(rowsums(b.matrix))
        if len(sums) != 1 or 0 in sums:
            raise ValueError(f"thck1 needs equal nonzero rowsums, got {sorted(sums)}")

        matrix = b.matrix.negated() if sums.pop() > 0 else b.matrix
        k, n = b.k, b.matrix.order
        g = self.half_shift(matrix, t, -1, ZeroDiag.FORCE)
        bound = 0.5 * (1 + math.sqrt(k)) * n * t - k
        ky_fan = self.spectra.ky_fan(g, k)

        certificate = GraphCertificate(
            family="thck1", parameters={"k": k, "n": n, "t": t}, order=g.order,
            claims=[self._at_least(f"ky_fan_{k}_lower_bound", ky_fan, bound, g.order)],
        )
        logger.info(f"thck1 graph of order {g.order}: Ky Fan {k}-norm {ky_fan:.6f} (bound {bound:.6f})")
        return BuiltGraph(graph=g, certificate=certificate)

    def build_kyfan_hadamard(self, h: PmOneMatrix, n: int) -> BuiltGraph:
        """
        Graph 1/2 (H (x) J_n + J) over a regular symmetric Hadamard matrix with
        diagonal -1 and positive rowsums; attains the Ky Fan k-norm bound at order kn.
        """
        k = h.order
        HadamardMatrix(h.entries)
        if any(x != -1 for x in h.diagonal()):
            raise ValueError("Hadamard matrix must have a constant -1 diagonal")
        sums = set(rowsums(h))
        if len(sums) != 1:
            raise ValueError(f"Hadamard matrix must be regular, got rowsums {sorted(sums)}")
        r = sums.pop()
        if r <= 0:
            raise ValueError(f"Hadamard rowsums must be positive, got {r}")
        if r * r != k:
            raise ValueError(f"Regular Hadamard matrix of order {k} must have rowsum sqrt({k}), got {r}")

        g = self.half_shift(h, n, 1, ZeroDiag.AUTO)
        order = g.order
        positive = (k - r) // 2
        negative = (k + r) // 2
        expected = PointSpectrum.from_pairs([
            (Fraction(r * n + k * n, 2), 1),
            (Fraction(r * n, 2), positive - 1),
            (0, order - k),
            (Fraction(-r * n, 2), negative),
        ])
        spectrum = self.spectra.eigen_sym(g)
        ky_fan = spectrum.ky_fan(k)
        at_order = 0.5 * (1 + r) * order
        claims = [
            self._spectrum_claim(spectrum, expected),
            self._equals(f"ky_fan_{k}_attains_bound", ky_fan, at_order, order),
        ]
        certificate = GraphCertificate(
            family="kyfan-hadamard",
            parameters={"k": k, "n": n, "per_block_value": 0.5 * (1 + r) * n, "per_order_value": at_order},
            order=order, expected_spectrum=expected.points, claims=claims,
        )
        return BuiltGraph(graph=g, certificate=certificate)

    def build_thmx(self, a: CertifiedMatrix, t: int) -> BuiltGraph:
        """
        Doubling graph 1/2 (A' (x) J_t + J), A' = [[A, -A], [-A, A]], diagonal zeroed.
        lambda*_{k+1} >= nt/sqrt(k) - 1, and together with its complement
        lambda*_{k+1}(G) + lambda*_{k+1}(complement) >= 2nt/sqrt(k) - 2.
        """
        if not a.certificate.is_member:
            raise ValueError("thMx needs a certified S_k member")
        k, n = a.k, a.matrix.order
        doubled = self.doubling(a.matrix)
        g = self.half_shift(doubled, t, 1, ZeroDiag.FORCE)
        gc = self.half_shift(doubled, t, -1, ZeroDiag.FORCE)
        order = g.order

        lam = self.spectra.eigen_sym(g).singular_values()[k]
        lam_c = self.spectra.eigen_sym(gc).singular_values()[k]
        claims = [
            self._at_least(f"lambda_star_{k + 1}", lam, n * t / math.sqrt(k) - 1, order),
            self._at_least(f"lambda_star_{k + 1}_pair_sum", lam + lam_c, order / math.sqrt(k) - 2, order),
            CheckResult(name="complement_pair", passed=self.complement(g) == gc,
                        detail="graph built from -A' is the complement"),
        ]
        certificate = GraphCertificate(
            family="thmx", parameters={"k": k, "n": n, "t": t}, order=order, claims=claims,
        )
        return BuiltGraph(graph=g, certificate=certificate)

    def build_thng_pair(self, k: int, t: int) -> Tuple[BuiltGraph, BuiltGraph]:
        """
        Nordhaus-Gaddum pair over B = K (x) (H_2 (x) A) in S_2k, A a member of S_k.

        G = 1/2 (B (x) J_t + J) and its complement 1/2 (J - B (x) J_t), both with
        zeroed diagonal, satisfy lambda_{k+1}(G) + lambda_{k+1}(G') >= Nt/sqrt(2k) - 2
        and |lambda_{Nt-k+1}(G)| + |lambda_{Nt-k+1}(G')| >= Nt/sqrt(2k).
        """
        logger.info("=" * 80)
        logger.info(f"BUILDING NORDHAUS-GADDUM PAIR: k={k}, t={t}")
        logger.info("=" * 80)

        seed = self.constructions.build_sk_member(k)
        b = self.constructions.sk_double(seed)
        g = self.half_shift(b.matrix, t, 1, ZeroDiag.FORCE)
        gc = self.half_shift(b.matrix, t, -1, ZeroDiag.FORCE)
        order = g.order

        spectrum = self.spectra.eigen_sym(g)
        spectrum_c = self.spectra.eigen_sym(gc)
        scale = order / math.sqrt(2 * k)
        upper_sum = spectrum.lambda_k(k + 1) + spectrum_c.lambda_k(k + 1)
        lower_sum = abs(spectrum.lambda_from_bottom(k)) + abs(spectrum_c.lambda_from_bottom(k))

        claims = [
            self._at_least(f"f_{k + 1}_sum", upper_sum, scale - 2, order),
            self._at_least(f"f_minus_{k}_sum", lower_sum, scale, order),
            CheckResult(name="complement_pair", passed=self.complement(g) == gc,
                        detail="graph built from -B is the complement"),
        ]
        parameters = {"k": k, "t": t, "seed_order": seed.matrix.order, "doubled_order": b.matrix.order}
        certificate = GraphCertificate(family="thng", parameters=parameters, order=order, claims=claims)
        certificate_c = GraphCertificate(family="thng-complement", parameters=parameters, order=order,
                                         claims=claims)
        logger.info(f"thNG pair of order {order}: sums {upper_sum:.6f}, {lower_sum:.6f}")
        return BuiltGraph(graph=g, certificate=certificate), BuiltGraph(graph=gc, certificate=certificate_c)
