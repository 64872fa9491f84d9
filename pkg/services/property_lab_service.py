import logging
from math import comb, sqrt
from typing import Iterator, List, Optional, Tuple

import numpy as np
import pandas as pd

from config import settings
from models.lab import PropertyRun, Universe, UniverseKind, Violation
from models.matrices import Graph
from services.spectra_service import SpectraService
from utils.matrix_io import MatrixFileCodec

logger = logging.getLogger(__name__)

PROPERTY_NAMES = ("lob", "weyl", "th1_spro", "ng_kyfan")

# above the n >= 15(k-1) premise at k = 2
SECOND_PAIR_ORDER = 30


class PropertyLabService:
    """
    Brute-force checks of eigenvalue inequalities over graph universes.

    A universe is either every labeled graph of one order (orders up to
    ENUMERATION_MAX_ORDER) or a seeded Erdos-Renyi sample. Graphs travel in
    batches of int8 adjacency stacks so that eigenvalues come from one
    batched LAPACK call per batch.
    """

    def __init__(self, spectra_service: Optional[SpectraService] = None,
                 tolerance: Optional[float] = None, batch_size: Optional[int] = None):
        self.spectra_service = spectra_service or SpectraService()
        self.tolerance = settings.LAB_TOLERANCE if tolerance is None else tolerance
        self.batch_size = batch_size or settings.LAB_BATCH_SIZE

    # ------------------------------------------------------------------
    # Universes
    # ------------------------------------------------------------------

    @staticmethod
    def _check_enumerable(n: int) -> None:
        if n < 1:
            raise ValueError(f"Graph order must be positive, got {n}")
        if n > settings.ENUMERATION_MAX_ORDER:
            raise ValueError(
                f"Exhaustive enumeration is limited to order {settings.ENUMERATION_MAX_ORDER}, got {n}"
            )

    @staticmethod
    def _from_bits(n: int, bits: np.ndarray) -> np.ndarray:
        iu, ju = np.triu_indices(n, 1)
        adj = np.zeros((bits.shape[0], n, n), dtype=np.int8)
        adj[:, iu, ju] = bits
        adj[:, ju, iu] = bits
        return adj

    def _exhaustive_batches(self, n: int) -> Iterator[np.ndarray]:
        slots = n * (n - 1) // 2
        total = 1 << slots
        shifts = np.arange(slots, dtype=np.int64)
        for start in range(0, total, self.batch_size):
            masks = np.arange(start, min(start + self.batch_size, total), dtype=np.int64)
            bits = ((masks[:, None] >> shifts[None, :]) & 1).astype(np.int8)
            yield self._from_bits(n, bits)

    def _random_batches(self, n: int, samples: int, p: float,
                        rng: np.random.Generator) -> Iterator[np.ndarray]:
        slots = n * (n - 1) // 2
        done = 0
        while done < samples:
            count = min(self.batch_size, samples - done)
            bits = (rng.random((count, slots)) < p).astype(np.int8)
            yield self._from_bits(n, bits)
            done += count

    def enumerate_graphs(self, n: int) -> Iterator[Graph]:
        """Every labeled graph on n vertices exactly once, in edge-bitmask order."""
        self._check_enumerable(n)
        return (Graph(adj) for batch in self._exhaustive_batches(n) for adj in batch)

    def _universe(self, n: int, exhaustive: bool, samples: int,
                  seed: int) -> Tuple[Universe, Iterator[np.ndarray]]:
        if exhaustive:
            self._check_enumerable(n)
            universe = Universe(kind=UniverseKind.EXHAUSTIVE, order=n, count=1 << (n * (n - 1) // 2))
            return universe, self._exhaustive_batches(n)

        if samples < 1:
            raise ValueError(f"Random universes need at least one sample, got {samples}")
        p = settings.LAB_EDGE_PROBABILITY
        rng = np.random.default_rng([seed, n])
        universe = Universe(kind=UniverseKind.RANDOM, order=n, count=samples, edge_probability=p, seed=seed)
        return universe, self._random_batches(n, samples, p, rng)

    @staticmethod
    def _plan(n_max: int, start: int) -> List[Tuple[int, bool]]:
        if n_max < 1:
            raise ValueError(f"n_max must be positive, got {n_max}")
        if n_max <= settings.ENUMERATION_MAX_ORDER:
            return [(n, True) for n in range(start, n_max + 1)]
        return [(n_max, False)]

    def _defaults(self, n_max: Optional[int], samples: Optional[int],
                  seed: Optional[int]) -> Tuple[int, int, int]:
        return (
            settings.ENUMERATION_MAX_ORDER if n_max is None else n_max,
            settings.LAB_DEFAULT_SAMPLES if samples is None else samples,
            settings.DEFAULT_SEED if seed is None else seed,
        )

    # ------------------------------------------------------------------
    # Batch helpers
    # ------------------------------------------------------------------

    def _eig(self, adj: np.ndarray) -> np.ndarray:
        return self.spectra_service.batch_eigenvalues(adj)

    @staticmethod
    def _complement(adj: np.ndarray) -> np.ndarray:
        n = adj.shape[-1]
        return (1 - adj) - np.eye(n, dtype=np.int8)

    def _assert_le(self, run: PropertyRun, claim: str, n: int, k: Optional[int],
                   lhs, rhs, adj: np.ndarray) -> None:
        lhs, rhs = np.broadcast_arrays(np.asarray(lhs, dtype=np.float64), np.asarray(rhs, dtype=np.float64))
        ok = lhs <= rhs + self.tolerance
        run.checks_performed += int(ok.size)
        if bool(ok.all()):
            return
        bad = int(np.flatnonzero(~ok)[0])
        failing = int((~ok).sum())
        detail = f"{failing} graph(s) in batch fail; first has {lhs[bad]:.12g} > {rhs[bad]:.12g}"
        logger.error(f"Violation of {claim} at order {n}, k={k}: {detail}")
        run.violations.append(Violation(
            claim=claim,
            order=n,
            k=k,
            detail=detail,
            witness_adj=MatrixFileCodec.serialize_adj(Graph(adj[bad])),
        ))

    def _log_start(self, name: str) -> None:
        logger.info("=" * 80)
        logger.info(f"PROPERTY RUN: {name} (tolerance {self.tolerance:g})")
        logger.info("=" * 80)

    def _log_finish(self, run: PropertyRun) -> None:
        logger.info("-" * 80)
        logger.info(f"{run.property_name}: {run.checks_performed} checks, {len(run.violations)} violation(s)")
        logger.info("-" * 80)

    # ------------------------------------------------------------------
    # Properties
    # ------------------------------------------------------------------

    def check_lob(self, k: int, n_max: Optional[int] = None, samples: Optional[int] = None,
                  seed: Optional[int] = None) -> PropertyRun:
        """
        lambda_k(G) >= -1 and lambda_{n-k+1}(G) <= 0 once n >= C(2k-1, k-1).

        Orders from the threshold up to min(n_max, 7) are enumerated. When the
        threshold or n_max is beyond enumeration, one random universe is drawn
        at n_max (or at threshold + 2 if n_max is below the threshold). Orders
        below the threshold are counted but never asserted.
        """
        if k < 1:
            raise ValueError(f"k must be positive, got {k}")
        n_max, samples, seed = self._defaults(n_max, samples, seed)
        threshold = comb(2 * k - 1, k - 1)
        cap = settings.ENUMERATION_MAX_ORDER

        run = PropertyRun(property_name="lob", tolerance=self.tolerance)
        self._log_start(f"lob k={k}, threshold {threshold}")

        for n in range(k, min(threshold, n_max + 1, cap + 1)):
            failing = 0
            for adj in self._exhaustive_batches(n):
                eig = self._eig(adj)
                bad = (eig[:, k - 1] < -1 - self.tolerance) | (eig[:, n - k] > self.tolerance)
                failing += int(bad.sum())
            note = f"order {n} is below threshold {threshold}: {failing} of {1 << (n * (n - 1) // 2)} graphs miss the bounds"
            logger.info(note)
            run.informational.append(note)

        orders = [(n, True) for n in range(threshold, min(n_max, cap) + 1)]
        if threshold > cap or n_max > cap:
            orders.append((n_max if n_max >= threshold else threshold + 2, False))

        for n, exhaustive in orders:
            universe, batches = self._universe(n, exhaustive, samples, seed)
            run.universe.append(universe)
            logger.info(f"STEP: order {n}, {universe.kind.value} universe of {universe.count} graphs")
            for adj in batches:
                eig = self._eig(adj)
                self._assert_le(run, "lambda_k_at_least_minus_one", n, k, -1.0, eig[:, k - 1], adj)
                self._assert_le(run, "lambda_n_minus_k_plus_1_at_most_zero", n, k, eig[:, n - k], 0.0, adj)

        self._log_finish(run)
        return run

    def check_weyl(self, n_max: Optional[int] = None, samples: Optional[int] = None,
                   seed: Optional[int] = None) -> PropertyRun:
        """
        Two consequences of Weyl's inequalities.

        Graph and complement: lambda_k(G) + lambda_{n-k+2}(complement) <= -1
        for 2 <= k <= n. Loaded diagonal: with A' equal to A plus a random 0/1
        diagonal, lambda_k(A) >= lambda_k(A') - 1 for every k.
        """
        n_max, samples, seed = self._defaults(n_max, samples, seed)
        run = PropertyRun(property_name="weyl", tolerance=self.tolerance)
        self._log_start("weyl")

        for n, exhaustive in self._plan(n_max, start=1):
            universe, batches = self._universe(n, exhaustive, samples, seed)
            run.universe.append(universe)
            logger.info(f"STEP: order {n}, {universe.kind.value} universe of {universe.count} graphs")
            diag_rng = np.random.default_rng([seed, n, 1])
            idx = np.arange(n)
            for adj in batches:
                eig = self._eig(adj)
                eig_c = self._eig(self._complement(adj))
                for k in range(2, n + 1):
                    self._assert_le(run, "graph_plus_complement_at_most_minus_one", n, k,
                                    eig[:, k - 1] + eig_c[:, n - k + 1], -1.0, adj)

                loaded = adj.copy()
                loaded[:, idx, idx] = diag_rng.integers(0, 2, size=(adj.shape[0], n), dtype=np.int8)
                eig_l = self._eig(loaded)
                for k in range(1, n + 1):
                    self._assert_le(run, "zeroing_diagonal_costs_at_most_one", n, k,
                                    eig_l[:, k - 1] - 1.0, eig[:, k - 1], adj)

        self._log_finish(run)
        return run

    def check_th1_spro(self, n_max: Optional[int] = None, samples: Optional[int] = None,
                       seed: Optional[int] = None) -> PropertyRun:
        """
        Per graph, for 2 <= k <= n: lambda_k <= lambda*_k <= n / (2 sqrt(k-1))
        and -lambda_{n-k+2} <= lambda*_k when lambda_{n-k+2} is negative. A
        positive lambda_{n-k+2} can exceed lambda*_k once k > (n+2)/2.

        Per universe (closed under complement, random samples are closed by
        adding complements): max lambda_k + 1 <= max |lambda_{n-k+2}|.
        """
        n_max, samples, seed = self._defaults(n_max, samples, seed)
        run = PropertyRun(property_name="th1_spro", tolerance=self.tolerance)
        self._log_start("th1_spro")

        for n, exhaustive in self._plan(n_max, start=1):
            universe, batches = self._universe(n, exhaustive, samples, seed)
            run.universe.append(universe)
            logger.info(f"STEP: order {n}, {universe.kind.value} universe of {universe.count} graphs")
            max_lambda = np.full(n, -np.inf)
            max_abs = np.full(n, -np.inf)

            for adj in batches:
                eig = self._eig(adj)
                star = np.sort(np.abs(eig), axis=1)[:, ::-1]
                for k in range(2, n + 1):
                    bound = n / (2.0 * sqrt(k - 1))
                    self._assert_le(run, "lambda_k_at_most_lambda_star_k", n, k,
                                    eig[:, k - 1], star[:, k - 1], adj)
                    self._assert_le(run, "lambda_star_k_at_most_n_over_2_sqrt_k_minus_1", n, k,
                                    star[:, k - 1], bound, adj)
                    self._assert_le(run, "negative_lambda_n_minus_k_plus_2_at_most_lambda_star_k", n, k,
                                    np.maximum(-eig[:, n - k + 1], 0.0), star[:, k - 1], adj)

                for values in (eig, self._eig(self._complement(adj))):
                    max_lambda = np.maximum(max_lambda, values.max(axis=0))
                    max_abs = np.maximum(max_abs, np.abs(values).max(axis=0))

            for k in range(2, n + 1):
                run.checks_performed += 1
                lhs = float(max_lambda[k - 1]) + 1.0
                rhs = float(max_abs[n - k + 1])
                if lhs > rhs + self.tolerance:
                    detail = f"universe maxima: max lambda_k + 1 = {lhs:.12g} > max |lambda_(n-k+2)| = {rhs:.12g}"
                    logger.error(f"Violation at order {n}, k={k}: {detail}")
                    run.violations.append(Violation(
                        claim="extremal_lambda_k_plus_one_at_most_extremal_negative", order=n, k=k, detail=detail,
                    ))

        self._log_finish(run)
        return run

    def check_ng_kyfan(self, n_max: Optional[int] = None, samples: Optional[int] = None,
                       seed: Optional[int] = None) -> PropertyRun:
        """
        Ky Fan and Nordhaus-Gaddum bounds.

        Everywhere: xi_k(G) <= (1 + sqrt k) n / 2 for 1 <= k <= n, and
        lambda*_k(G) + lambda*_k(complement) <= n / sqrt(k-1) for k >= 2.
        For n >= 4: |lambda_n(G)| + |lambda_n(complement)| <= n / sqrt 2 + 1.
        At order 30, on a random sample: lambda_2(G) + lambda_2(complement) <= n / sqrt 2 - 1.
        """
        n_max, samples, seed = self._defaults(n_max, samples, seed)
        run = PropertyRun(property_name="ng_kyfan", tolerance=self.tolerance)
        self._log_start("ng_kyfan")

        for n, exhaustive in self._plan(n_max, start=1):
            universe, batches = self._universe(n, exhaustive, samples, seed)
            run.universe.append(universe)
            logger.info(f"STEP: order {n}, {universe.kind.value} universe of {universe.count} graphs")
            for adj in batches:
                eig = self._eig(adj)
                eig_c = self._eig(self._complement(adj))
                star = np.sort(np.abs(eig), axis=1)[:, ::-1]
                star_c = np.sort(np.abs(eig_c), axis=1)[:, ::-1]
                ky_fan = np.cumsum(star, axis=1)
                for k in range(1, n + 1):
                    self._assert_le(run, "ky_fan_k_at_most_half_one_plus_sqrt_k_times_n", n, k,
                                    ky_fan[:, k - 1], 0.5 * (1.0 + sqrt(k)) * n, adj)
                for k in range(2, n + 1):
                    self._assert_le(run, "singular_pair_sum_at_most_n_over_sqrt_k_minus_1", n, k,
                                    star[:, k - 1] + star_c[:, k - 1], n / sqrt(k - 1), adj)
                if n >= 4:
                    self._assert_le(run, "smallest_pair_sum_at_most_n_over_sqrt_2_plus_1", n, 1,
                                    np.abs(eig[:, n - 1]) + np.abs(eig_c[:, n - 1]), n / sqrt(2.0) + 1.0, adj)

        order = SECOND_PAIR_ORDER
        universe, batches = self._universe(order, False, samples, seed)
        run.universe.append(universe)
        logger.info(f"STEP: second-eigenvalue pair sums on a random sample of order {order}")
        for adj in batches:
            eig = self._eig(adj)
            eig_c = self._eig(self._complement(adj))
            self._assert_le(run, "second_pair_sum_at_most_n_over_sqrt_2_minus_1", order, 2,
                            eig[:, 1] + eig_c[:, 1], order / sqrt(2.0) - 1.0, adj)

        self._log_finish(run)
        return run

    def run_property(self, name: str, k: Optional[int] = None, n_max: Optional[int] = None,
                     samples: Optional[int] = None, seed: Optional[int] = None) -> PropertyRun:
        if name == "lob":
            return self.check_lob(k if k is not None else 2, n_max, samples, seed)
        if name == "weyl":
            return self.check_weyl(n_max, samples, seed)
        if name == "th1_spro":
            return self.check_th1_spro(n_max, samples, seed)
        if name == "ng_kyfan":
            return self.check_ng_kyfan(n_max, samples, seed)
        raise ValueError(f"Unknown property '{name}'; expected one of {', '.join(PROPERTY_NAMES)}")

    @staticmethod
    def summary(run: PropertyRun) -> pd.DataFrame:
        """One row per universe with the violations found at that order."""
        rows = []
        for universe in run.universe:
            rows.append({
                "property": run.property_name,
                "order": universe.order,
                "kind": universe.kind.value,
                "graphs": universe.count,
                "violations": sum(1 for v in run.violations if v.order == universe.order),
            })
        return pd.DataFrame(rows, columns=["property", "order", "kind", "graphs", "violations"])
