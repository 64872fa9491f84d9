import json
import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from config import settings
from models.matrices import PmOneMatrix
from models.search import Feasibility, PruningRule, SearchConfig, SearchResult, SearchStatus
from services.construction_service import ConstructionService
from utils.errors import CertificationError
from utils.exact_linalg import minpoly_zero_pm_check
from utils.number_theory import is_square

logger = logging.getLogger(__name__)

Pending = Tuple[List[int], List[int]]


class _BudgetExhausted(Exception):
    def __init__(self, path: List[int]):
        super().__init__("node budget exhausted")
        self.path = path


class _SubtreeExplorer:
    """
    Depth-first completion of symmetric (-1,1)-matrices inside one subtree.

    Entries are filled column by column over the upper triangle, so after the
    last entry of column j the leading (j+1)x(j+1) block is complete and the
    interlacing rules can be applied to it. A path is the subtree prefix
    followed by the values chosen at each position.
    """

    def __init__(self, k: int, n: int, allowed_traces: Sequence[int], reduced: bool,
                 rules: Sequence[str], budget: int):
        self.k, self.n = k, n
        self.allowed = list(allowed_traces)
        self.reduced = reduced
        self.rules = set(rules)
        self.budget = budget
        self.nodes = 0
        self.radius = n / math.sqrt(k)
        self.tol = settings.MULTIPLICITY_GROUPING * max(n, 1)

        splits = [ConstructionService.inertia_from_trace(k, n, t)[0] for t in self.allowed]
        splits = [s for s in splits if s is not None]
        self.max_plus = max((s[0] for s in splits), default=k)
        self.max_minus = max((s[1] for s in splits), default=k)

        if reduced:
            self.positions = [(i, j) for j in range(2, n) for i in range(1, j)]
        else:
            self.positions = [(i, j) for j in range(n) for i in range(j + 1)][1:]

        self._arr = np.zeros((n, n), dtype=np.int64)
        self._diag: List[int] = []
        self._path: List[int] = []
        self._resume: List[int] = []

    # ------------------------------------------------------------------

    def explore(self, prefix: List[int], start: Optional[List[int]]) -> Optional[np.ndarray]:
        if not self._setup(prefix):
            return None
        self._path = list(prefix)
        self._resume = list(start[len(prefix):]) if start else []
        return self._descend(0)

    def _setup(self, prefix: List[int]) -> bool:
        n = self.n
        self.nodes += 1
        self._arr[:, :] = 0
        if self.reduced:
            c = prefix[0]
            self._diag = [1] + [1] * c + [-1] * (n - 1 - c)
            self._arr[0, :] = 1
            self._arr[:, 0] = 1
            np.fill_diagonal(self._arr, self._diag)
            return n < 2 or self._block_ok(2)
        self._arr[0, 0] = prefix[0]
        return self._admissible(0, 0)

    def _choices(self, i: int, j: int) -> List[int]:
        # Row 1 is nonincreasing inside each class of equal diagonal entries
        if self.reduced and i == 1 and j >= 3 and self._diag[j] == self._diag[j - 1] \
                and self._arr[1, j - 1] == -1:
            return [-1]
        return [1, -1]

    def _descend(self, depth: int) -> Optional[np.ndarray]:
        if depth == len(self.positions):
            return self._leaf()

        i, j = self.positions[depth]
        choices = self._choices(i, j)
        if depth < len(self._resume):
            resumed = self._resume[depth]
            if resumed not in choices:
                raise ValueError(f"Resume path is not a valid search node at depth {depth}")
            choices = choices[choices.index(resumed):]

        for value in choices:
            if self.nodes >= self.budget:
                raise _BudgetExhausted(self._path + [value])
            self.nodes += 1
            if self.nodes % settings.SEARCH_PROGRESS_EVERY == 0:
                logger.info(f"Search progress: {self.nodes} nodes, depth {depth}/{len(self.positions)}")

            self._arr[i, j] = self._arr[j, i] = value
            self._path.append(value)
            if self._admissible(i, j):
                found = self._descend(depth + 1)
                if found is not None:
                    return found
            self._path.pop()
            self._resume = self._resume[:depth]
        return None

    def _admissible(self, i: int, j: int) -> bool:
        if not self.reduced and i == j and "trace_window" in self.rules:
            partial = int(np.trace(self._arr[:j + 1, :j + 1]))
            remaining = self.n - 1 - j
            if not any(abs(t - partial) <= remaining for t in self.allowed):
                return False
        column_done = (i == j) if not self.reduced else (i == j - 1)
        if column_done:
            return self._block_ok(j + 1)
        return True

    def _block_ok(self, m: int) -> bool:
        eig = np.linalg.eigvalsh(self._arr[:m, :m].astype(np.float64))
        if "rank_interlacing" in self.rules and int(np.sum(np.abs(eig) > self.tol)) > self.k:
            return False
        if "spectral_radius_interlacing" in self.rules and float(np.max(np.abs(eig))) > self.radius + self.tol:
            return False
        if "inertia_interlacing" in self.rules:
            if int(np.sum(eig > self.tol)) > self.max_plus or int(np.sum(eig < -self.tol)) > self.max_minus:
                return False
        return True

    def _leaf(self) -> Optional[np.ndarray]:
        if int(np.trace(self._arr)) not in self.allowed:
            return None
        if not minpoly_zero_pm_check(self._arr, self.n * self.n, self.k):
            return None
        return self._arr.copy()


def _explore_subtree(k: int, n: int, allowed: Sequence[int], reduced: bool, rules: Sequence[str],
                     prefix: List[int], start: Optional[List[int]], budget: int):
    explorer = _SubtreeExplorer(k, n, allowed, reduced, rules, budget)
    try:
        return explorer.explore(prefix, start), explorer.nodes, None
    except _BudgetExhausted as e:
        return None, explorer.nodes, e.path


class SearchService:
    """Pruned exhaustive search for members of S_k at small orders"""

    def __init__(self, construction_service: Optional[ConstructionService] = None):
        self.constructions = construction_service or ConstructionService()

    # ------------------------------------------------------------------
    # Obstructions and rules
    # ------------------------------------------------------------------

    def feasibility_filter(self, k: int, n: int) -> Feasibility:
        """
        Necessary conditions for a member of S_k of order n.

        Odd non-square k is impossible. n/sqrt(k) is an eigenvalue of an integer
        matrix, so it is an algebraic integer: sqrt(k) divides n for square k and
        k divides n^2 otherwise. trace(B) = (n/sqrt(k))(n_plus - n_minus) limits
        the diagonal.
        """
        if k < 1 or n < 1:
            raise ValueError(f"k and order must be positive, got k={k}, order={n}")

        def obstructed(reason: str) -> Feasibility:
            return Feasibility(k=k, order=n, feasible=False, reason=reason)

        if k % 2 == 1 and not is_square(k):
            return obstructed(f"k = {k} is odd and not a perfect square; a member would need n_plus = n_minus")
        if k > n:
            return obstructed(f"k = {k} exceeds the order {n}; members of S_k have rank k")

        if is_square(k):
            r = math.isqrt(k)
            if n % r != 0:
                return obstructed(f"eigenvalue n/sqrt(k) = {n}/{r} is not an integer")
            step = n // r
            traces = sorted({step * d for d in range(-r, r + 1) if (k + d) % 2 == 0 and (step * d - n) % 2 == 0})
            reason = f"trace = (n/sqrt(k))(n_plus - n_minus), admissible traces {traces}"
        else:
            if (n * n) % k != 0:
                return obstructed(f"n^2/k = {n * n}/{k} is not an integer")
            traces = [0] if n % 2 == 0 else []
            reason = "non-square k forces n_plus = n_minus and trace 0"

        if not traces:
            return obstructed(f"no admissible trace at order {n}")
        return Feasibility(k=k, order=n, feasible=True, reason=reason, allowed_traces=traces)

    def pruning_rules(self, symmetry_reduction: bool = True) -> List[PruningRule]:
        rules = [
            PruningRule(
                name="trace_window",
                soundness="only admissible traces occur; a partial diagonal sum farther than the "
                          "remaining diagonal length from all of them cannot complete",
            ),
            PruningRule(
                name="rank_interlacing",
                soundness="a principal submatrix of a rank-k matrix has rank at most k",
            ),
            PruningRule(
                name="spectral_radius_interlacing",
                soundness="eigenvalues of a principal submatrix lie in [-n/sqrt(k), n/sqrt(k)]",
            ),
            PruningRule(
                name="inertia_interlacing",
                soundness="Cauchy interlacing gives n_plus(M) <= n_plus(B) and n_minus(M) <= n_minus(B)",
            ),
            PruningRule(
                name="signed_permutation_normal_form",
                soundness="S_k is closed under negation and signed permutations; each orbit holds a matrix "
                          "with b00 = +1, row 0 all +1, the other diagonal entries sorted +1 first and "
                          "row 1 nonincreasing inside each diagonal class",
                enabled=symmetry_reduction,
            ),
            PruningRule(name="cubic_identity_on_minors", enabled=False),
        ]
        for rule in rules:
            if not rule.soundness:
                rule.enabled = False
        return rules

    # ------------------------------------------------------------------
    # Search
    # ------------------------------------------------------------------

    @staticmethod
    def _subtrees(feasibility: Feasibility, reduced: bool) -> List[List[int]]:
        n = feasibility.order
        if not reduced:
            return [[1], [-1]]
        choices = [c for c in range(n - 1, -1, -1) if 2 * c + 2 - n in feasibility.allowed_traces]
        return [[c] for c in choices]

    @staticmethod
    def _parse_token(token: str, config: SearchConfig) -> Tuple[List[Pending], int]:
        try:
            data = json.loads(token)
            pending = [(list(p["subtree"]), list(p["path"])) for p in data["pending"]]
            nodes = int(data.get("nodes", 0))
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            raise ValueError(f"Malformed resume token: {str(e)}")
        if (data.get("k"), data.get("order"), data.get("symmetry_reduction")) != \
                (config.k, config.order, config.symmetry_reduction):
            raise ValueError("Resume token was written for a different k, order or symmetry setting")
        return pending, nodes

    @staticmethod
    def _token(config: SearchConfig, pending: List[Pending], nodes: int) -> str:
        return json.dumps({
            "k": config.k,
            "order": config.order,
            "symmetry_reduction": config.symmetry_reduction,
            "pending": [{"subtree": s, "path": p} for s, p in pending],
            "nodes": nodes,
        })

    def search_sk(self, config: SearchConfig) -> SearchResult:
        k, n = config.k, config.order
        logger.info("=" * 80)
        logger.info(f"SEARCH FOR S_{k} AT ORDER {n} (budget {config.budget}, "
                    f"symmetry reduction {'on' if config.symmetry_reduction else 'off'})")
        logger.info("=" * 80)

        logger.info("-" * 80)
        logger.info("STEP 1: FEASIBILITY")
        logger.info("-" * 80)
        feasibility = self.feasibility_filter(k, n)
        logger.info(f"{'Feasible' if feasibility.feasible else 'Obstructed'}: {feasibility.reason}")
        if not feasibility.feasible:
            return SearchResult(k=k, order=n, status=SearchStatus.EXHAUSTED,
                                obstructions_applied=[feasibility.reason])

        logger.info("-" * 80)
        logger.info("STEP 2: PRUNING RULES")
        logger.info("-" * 80)
        rules = self.pruning_rules(config.symmetry_reduction)
        for rule in rules:
            state = "enabled" if rule.enabled else "disabled"
            logger.info(f"  {rule.name} ({state}): {rule.soundness or 'no soundness argument'}")
        active = [r.name for r in rules if r.enabled]

        if config.resume_token:
            pending, nodes_before = self._parse_token(config.resume_token, config)
            logger.info(f"Resuming {len(pending)} pending subtrees after {nodes_before} nodes")
        else:
            pending = [(s, list(s)) for s in self._subtrees(feasibility, config.symmetry_reduction)]
            nodes_before = 0

        logger.info("-" * 80)
        logger.info(f"STEP 3: DEPTH-FIRST COMPLETION OVER {len(pending)} SUBTREES")
        logger.info("-" * 80)
        args = (k, n, feasibility.allowed_traces, config.symmetry_reduction, active)
        if config.workers > 1 and len(pending) > 1:
            witness, nodes, left = self._run_parallel(args, pending, config)
        else:
            witness, nodes, left = self._run_sequential(args, pending, config.budget)
        total = nodes_before + nodes

        result = SearchResult(k=k, order=n, status=SearchStatus.EXHAUSTED, nodes_expanded=total,
                              obstructions_applied=[feasibility.reason], pruning_rules=active)
        if witness is not None:
            matrix = PmOneMatrix(witness)
            certificate = self.constructions.sk_certify(matrix, k)
            if not certificate.is_member:
                raise CertificationError(f"Search witness of order {n} failed independent certification")
            result.status = SearchStatus.FOUND
            result.witness = matrix
            result.certificate = certificate
        elif left:
            result.status = SearchStatus.BUDGET_EXCEEDED
            result.resume_token = self._token(config, left, total)

        logger.info(f"Search finished: {result.status.value} after {total} nodes")
        return result

    @staticmethod
    def _run_sequential(args, pending: List[Pending], budget: int):
        used = 0
        for idx, (subtree, start) in enumerate(pending):
            if used >= budget:
                return None, used, pending[idx:]
            witness, nodes, path = _explore_subtree(*args, subtree, start, budget - used)
            used += nodes
            if witness is not None:
                return witness, used, []
            if path is not None:
                return None, used, [(subtree, path)] + pending[idx + 1:]
        return None, used, []

    @staticmethod
    def _run_parallel(args, pending: List[Pending], config: SearchConfig):
        share = max(1, config.budget // len(pending))
        outcomes = Parallel(n_jobs=config.workers)(
            delayed(_explore_subtree)(*args, subtree, start, share) for subtree, start in pending
        )
        nodes = sum(o[1] for o in outcomes)
        for witness, _, _ in outcomes:
            if witness is not None:
                return witness, nodes, []
        left = [(subtree, path) for (subtree, _), (_, _, path) in zip(pending, outcomes) if path is not None]
        return None, nodes, left

    # ------------------------------------------------------------------
    # Canonical form
    # ------------------------------------------------------------------

    def canonical_form(self, b: PmOneMatrix) -> PmOneMatrix:
        """
        Lexicographically least matrix in the orbit of b under signed permutations.

        The key reads the upper triangle column by column (+1 before -1). Column j
        opens with entry (0, j), which a sign change always makes +1, so with first
        vertex v every candidate has entries b_vx * b_vy * b_xy; the remaining
        order is found by branch and bound over the least next column.
        """
        n = b.order
        if n > settings.CANONICAL_FORM_MAX_ORDER:
            raise ValueError(f"Canonical form is capped at order {settings.CANONICAL_FORM_MAX_ORDER}, got {n}")
        arr = b.entries
        first_value = int(np.max(np.diag(arr)))
        best: List = [None, None]

        for v in range(n):
            if arr[v, v] != first_value:
                continue
            signs = arr[v].copy()
            signs[v] = 1
            m = signs[:, None] * arr * signs[None, :]
            self._canonical_descend(m, [v], [int(m[v, v] == -1)], best)

        return PmOneMatrix(best[1])

    def _canonical_descend(self, m: np.ndarray, order: List[int], key: List[int], best: List) -> None:
        n = m.shape[0]
        if len(order) == n:
            if best[0] is None or key < best[0]:
                best[0] = list(key)
                best[1] = m[np.ix_(order, order)]
            return

        rest = [x for x in range(n) if x not in order]
        columns = {x: [int(m[o, x] == -1) for o in order] + [int(m[x, x] == -1)] for x in rest}
        least = min(columns.values())
        extended = key + least
        if best[0] is not None and extended > best[0][:len(extended)]:
            return
        branches: List[int] = []
        for x in rest:
            if columns[x] == least and not any(self._twins(m, x, y) for y in branches):
                branches.append(x)
        for x in branches:
            self._canonical_descend(m, order + [x], extended, best)

    @staticmethod
    def _twins(m: np.ndarray, x: int, y: int) -> bool:
        # Swapping twins is an automorphism of m fixing every placed vertex
        if m[x, x] != m[y, y]:
            return False
        others = np.ones(m.shape[0], dtype=bool)
        others[[x, y]] = False
        return bool(np.array_equal(m[x, others], m[y, others]))
