import logging
import math
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple, Union

import pandas as pd

from models.spectrum import PointSpectrum
from models.srg import BoundReport, BoundSide, SrgParams, TaylorSummary
from utils import number_theory
from utils.number_theory import exact_cbrt, exact_sqrt, is_odd_prime_power, is_square, next_odd_prime

logger = logging.getLogger(__name__)

Value = Union[Fraction, float]

# Strongly regular graphs used for 5 <= k <= 15: k -> (v, k, a, c)
EXPLICIT_SRG_TABLE: Dict[int, Tuple[int, int, int, int]] = {
    5: (9, 4, 1, 2),
    6: (10, 3, 0, 1),
    7: (13, 6, 2, 3),
    8: (15, 6, 1, 3),
    9: (15, 6, 1, 3),
    10: (15, 6, 1, 3),
    11: (21, 10, 3, 6),
    12: (21, 10, 3, 6),
    13: (21, 10, 3, 6),
    14: (21, 10, 3, 6),
    15: (21, 10, 3, 6),
}


def _exact(num, den) -> Value:
    """Fraction when both parts are integers, float otherwise."""
    if isinstance(num, (int, Fraction)) and isinstance(den, (int, Fraction)):
        return Fraction(num) / Fraction(den)
    return float(num) / float(den)


def _as_float(x: Optional[Value]) -> Optional[float]:
    return None if x is None else float(x)


class SrgBoundsService:
    """Strongly regular graph spectra, Taylor graphs and closed-form extremal bounds"""

    def __init__(self):
        self._evaluators: Dict[str, Tuple[Callable, bool]] = {
            "ub_ck": (self.ub_ck, False),
            "ub_cmk": (self.ub_cmk, False),
            "ub_ckstar": (self.ub_ckstar, False),
            "lb_ck_taylor": (self.lb_ck_taylor, False),
            "lb_ck_general": (self.lb_ck_general, False),
            "lb_ck_explicit": (self.lb_ck_explicit, False),
            "bracket_ckstar": (self.bracket_ckstar, False),
            "ramsey_threshold": (self.ramsey_threshold, False),
            "ng_upper": (self.ng_upper, True),
            "ng_bracket": (self.ng_bracket, False),
            "kyfan_upper": (self.kyfan_upper, True),
            "tau_bracket": (self.tau_bracket, True),
            "umn_bounds": (self.umn_bounds, True),
            "kyfan_pm_bracket": (self.kyfan_pm_bracket, True),
            "xi_limit_bracket": (self.xi_limit_bracket, False),
        }

    # ------------------------------------------------------------------
    # Strongly regular spectra
    # ------------------------------------------------------------------

    @staticmethod
    def srg_spectrum(p: SrgParams) -> PointSpectrum:
        """
        Three-point spectrum {k; r x f; s x g} of a strongly regular graph.

        r, s = ((a-c) +- sqrt((a-c)^2 + 4(k-c))) / 2 and the multiplicities solve
        1 + f + g = v, k + f r + g s = 0. Values are exact when the
        discriminant is a perfect square; otherwise f = g = (v-1)/2 is required.
        """
        v, k, a, c = p.as_tuple()
        if k == 0:
            return PointSpectrum.from_pairs([(0, v)])
        if k == v - 1:
            return PointSpectrum.from_pairs([(k, 1), (-1, v - 1)])

        d = a - c
        disc = d * d + 4 * (k - c)
        root = exact_sqrt(disc)
        numerator = 2 * k + (v - 1) * d

        if isinstance(root, int):
            if numerator % root != 0 or (v - 1 - numerator // root) % 2 != 0:
                raise ValueError(f"Parameters {p.as_tuple()} give fractional multiplicities")
            f = (v - 1 - numerator // root) // 2
            g = v - 1 - f
            r, s = Fraction(d + root, 2), Fraction(d - root, 2)
        else:
            if numerator != 0 or (v - 1) % 2 != 0:
                raise ValueError(f"Parameters {p.as_tuple()} give irrational multiplicities")
            f = g = (v - 1) // 2
            r, s = (d + root) / 2, (d - root) / 2

        if f < 0 or g < 0:
            raise ValueError(f"Parameters {p.as_tuple()} give negative multiplicities")

        merged: Dict[Value, int] = {}
        for value, mult in ((Fraction(k), 1), (r, f), (s, g)):
            merged[value] = merged.get(value, 0) + mult
        return PointSpectrum.from_pairs(merged.items())

    @staticmethod
    def _check_taylor_q(q: int) -> None:
        if q < 3:
            raise ValueError(f"Taylor graphs need q >= 3, got {q}")
        if q % 2 == 0:
            raise ValueError(f"Taylor graphs need odd q, got {q}")
        if not is_odd_prime_power(q):
            raise ValueError(f"q = {q} is not a prime power")

    def taylor_params(self, q: int) -> SrgParams:
        """(q^3, (q-1)(q^2+1)/2, (q-1)^3/4 - 1, (q-1)(q^2+1)/4)"""
        self._check_taylor_q(q)
        return SrgParams(
            v=q ** 3,
            k=(q - 1) * (q * q + 1) // 2,
            a=(q - 1) ** 3 // 4 - 1,
            c=(q - 1) * (q * q + 1) // 4,
        )

    def taylor_complement_params(self, q: int) -> SrgParams:
        """
        Parameters of the complement, from the complement identities.

        Degree (q+1)(q^2-1)/2 and c = (q+1)(q^2-1)/4; a works out to
        (q+3)(q^2-3)/4 + 1, e.g. (27, 16, 10, 8) at q = 3.
        """
        return self.taylor_params(q).complement()

    def taylor_spectra(self, q: int) -> Tuple[PointSpectrum, PointSpectrum]:
        self._check_taylor_q(q)
        taylor = PointSpectrum.from_pairs([
            (Fraction((q - 1) * (q * q + 1), 2), 1),
            (Fraction(q - 1, 2), (q - 1) * (q * q + 1)),
            (Fraction(-(q * q + 1), 2), q * (q - 1)),
        ])
        complement = PointSpectrum.from_pairs([
            (Fraction((q + 1) * (q * q - 1), 2), 1),
            (Fraction(q * q - 1, 2), q * (q - 1)),
            (Fraction(-(q + 1), 2), (q - 1) * (q * q + 1)),
        ])
        return taylor, complement

    def seidel_shift_spectrum(self, q: int) -> PointSpectrum:
        """
        Spectrum of T = 2A(complement of T(q)) - J.

        The all-ones eigenvalue 2k - q^3 becomes q^2 - q - 1; every other
        eigenvalue of the complement is doubled.
        """
        _, complement = self.taylor_spectra(q)
        (top, _), (r, f), (s, g) = complement.as_pairs()
        return PointSpectrum.from_pairs([(2 * r, f), (2 * top - q ** 3, 1), (2 * s, g)])

    def taylor_analytic_summary(self, q: int) -> TaylorSummary:
        p = self.taylor_params(q)
        taylor, complement = self.taylor_spectra(q)
        complement_degree = p.v - p.k - 1

        positive_mass = sum(m * x * x for x, m in taylor.as_pairs()[1:] if x > 0)
        negative_mass = sum(m * x * x for x, m in complement.as_pairs() if x < 0)
        return TaylorSummary(
            q=q,
            degree_ratio=Fraction(p.k, p.v),
            adjacent_common_ratio=Fraction(p.a, p.v),
            nonadjacent_common_ratio=Fraction(p.c, p.v),
            positive_mass_ratio=positive_mass / (p.v * p.k),
            complement_negative_mass_ratio=negative_mass / (p.v * complement_degree),
        )

    # ------------------------------------------------------------------
    # Prime helpers
    # ------------------------------------------------------------------

    @staticmethod
    def next_prime(x: float) -> int:
        return number_theory.next_prime(x)

    @staticmethod
    def is_odd_prime_power(q: int) -> bool:
        return is_odd_prime_power(q)

    @staticmethod
    def _taylor_prime(k: int) -> int:
        """Smallest odd prime q with q(q-1) + 1 >= k."""
        return next_odd_prime(0.5 + math.sqrt(k - 0.75))

    @staticmethod
    def taylor_bound_chain(q: int) -> Tuple[Fraction, Fraction, float]:
        """(q^2+1)/(2q^3) > (2q-1)/(4q^2-2q-1) > 1/(2 sqrt(q^2-q) + 1) for every q > 1."""
        return (
            Fraction(q * q + 1, 2 * q ** 3),
            Fraction(2 * q - 1, 4 * q * q - 2 * q - 1),
            1.0 / (2.0 * math.sqrt(q * q - q) + 1.0),
        )

    # ------------------------------------------------------------------
    # Upper bounds on c_k, c_-k, c_k*
    # ------------------------------------------------------------------

    @staticmethod
    def _check_k(k: int, minimum: int) -> None:
        if k < minimum:
            raise ValueError(f"k must be at least {minimum}, got {k}")

    def _half_inverse_root(self, m: int) -> Value:
        return _exact(1, 2 * exact_sqrt(m))

    def ub_ck(self, k: int) -> BoundReport:
        self._check_k(k, 2)
        notes = ["equality holds at k = 2"] if k == 2 else ["never attained for k >= 3"]
        return BoundReport(
            name="ub_ck", inputs={"k": k}, value=self._half_inverse_root(k - 1), side=BoundSide.UPPER,
            citation="c_k <= 1/(2 sqrt(k-1)) for k >= 2, from (k-1) lambda_k*^2 <= n^2/4",
            notes=notes,
        )

    def ub_cmk(self, k: int) -> BoundReport:
        self._check_k(k, 1)
        return BoundReport(
            name="ub_cmk", inputs={"k": k}, value=self._half_inverse_root(k), side=BoundSide.UPPER,
            citation="c_{-k} <= 1/(2 sqrt(k)), the bound on c_{-k+1} shifted by one",
        )

    def ub_ckstar(self, k: int) -> BoundReport:
        self._check_k(k, 2)
        notes = ["equality holds at k = 2"] if k == 2 else ["attained for infinitely many k"]
        return BoundReport(
            name="ub_ckstar", inputs={"k": k}, value=self._half_inverse_root(k - 1), side=BoundSide.UPPER,
            citation="c_k* <= 1/(2 sqrt(k-1)) for k >= 2",
            notes=notes,
        )

    # ------------------------------------------------------------------
    # Lower bounds on c_k from Taylor graphs and small SRGs
    # ------------------------------------------------------------------

    def lb_ck_taylor(self, k: int) -> BoundReport:
        """c_k >= (q^2+1)/(2q^3) > 1/(2 sqrt(k-1) + 1) when k = q^2 - q + 1, q an odd prime power."""
        self._check_k(k, 3)
        disc = 4 * k - 3
        if not is_square(disc) or (1 + math.isqrt(disc)) % 2 != 0:
            raise ValueError(f"k = {k} is not of the form q^2 - q + 1")
        q = (1 + math.isqrt(disc)) // 2
        self._check_taylor_q(q)

        left, middle, right = self.taylor_bound_chain(q)
        return BoundReport(
            name="lb_ck_taylor", inputs={"k": k}, value=left, side=BoundSide.LOWER,
            citation="c_k > 1/(2 sqrt(k-1) + 1) for k = q^2 - q + 1, closed blowups of the Taylor complement",
            lower=right,
            premise_holds=left > middle > right,
            witness={"q": q, "srg": self.taylor_complement_params(q).as_tuple(), "chain_middle": middle},
            notes=["the same bound holds for c_{-k+1}"],
        )

    def lb_ck_general(self, k: int) -> BoundReport:
        """
        c_k > 1/(2 sqrt(k-1) + cbrt(k)) for large k; reports whether the prime
        condition q < sqrt(k-1) + cbrt(k)/2 holds at this k.
        """
        self._check_k(k, 2)
        q = self._taylor_prime(k)
        root, cube = math.sqrt(k - 1), exact_cbrt(k)
        holds = q < root + cube / 2
        return BoundReport(
            name="lb_ck_general", inputs={"k": k}, value=1.0 / (2 * root + cube), side=BoundSide.LOWER,
            citation="c_k > 1/(2 sqrt(k-1) + cbrt(k)) for k > k_0, closed blowups of the Taylor complement",
            premise_holds=holds,
            asymptotic=True,
            witness={"q": q, "taylor_value": Fraction(q * q + 1, 2 * q ** 3)},
            notes=[] if holds else [f"prime condition q = {q} < sqrt(k-1) + cbrt(k)/2 fails at k = {k}"],
        )

    def lb_ck_explicit(self, k: int) -> BoundReport:
        if k < 5:
            raise ValueError(f"No explicit lower bound for k = {k}; c_3 and c_4 are open")

        if k <= 15:
            params = SrgParams(**dict(zip("vkac", EXPLICIT_SRG_TABLE[k])))
            eigenvalue = self.srg_spectrum(params).lambda_k(k)
            value = _exact(eigenvalue + 1, params.v)
            stated = Fraction(2, 2 * k - 1)
            return BoundReport(
                name="lb_ck_explicit", inputs={"k": k}, value=value, side=BoundSide.LOWER,
                citation="c_k >= 1/(k - 1/2) for 5 <= k <= 15, closed blowups of small strongly regular graphs",
                lower=stated,
                premise_holds=float(value) >= float(stated),
                witness={"srg": params.as_tuple(), "lambda_k": eigenvalue},
            )

        q = number_theory.next_prime(0.5 + math.sqrt(k - 0.75))
        return BoundReport(
            name="lb_ck_explicit", inputs={"k": k}, value=_exact(1, 4 * exact_sqrt(k - 1)), side=BoundSide.LOWER,
            citation="c_k >= 1/(4 sqrt(k-1)) for k >= 16, Taylor complement with a Bertrand prime",
            premise_holds=q < 2 * math.sqrt(k - 1),
            witness={"q": q, "taylor_value": Fraction(q * q + 1, 2 * q ** 3)},
        )

    def bracket_ckstar(self, k: int) -> BoundReport:
        self._check_k(k, 3)
        s = math.isqrt(k - 1)
        if s * s < k - 1:
            s += 1
        root = math.sqrt(k - 1)
        return BoundReport(
            name="bracket_ckstar", inputs={"k": k}, value=1.0 / (2 * root + 2), side=BoundSide.BRACKET,
            citation="1/(2 sqrt(k-1)) >= c_k* > 1/(2 sqrt(k-1) + 2) for k >= 3",
            lower=1.0 / (2 * root + 2),
            upper=self._half_inverse_root(k - 1),
            witness={"s": s, "constructive_lower": Fraction(1, 2 * s)},
            notes=["open: is there a constant C with c_k* > 1/(2 sqrt(k+C)) for all k >= 3"],
        )

    def ramsey_threshold(self, k: int) -> BoundReport:
        self._check_k(k, 1)
        return BoundReport(
            name="ramsey_threshold", inputs={"k": k}, value=math.comb(2 * k - 1, k - 1), side=BoundSide.LOWER,
            citation="n >= binom(2k-1, k-1) forces lambda_k >= -1 and lambda_{n-k+1} <= 0",
        )

    # ------------------------------------------------------------------
    # Nordhaus-Gaddum
    # ------------------------------------------------------------------

    def ng_upper(self, k: int, n: int) -> List[BoundReport]:
        self._check_k(k, 1)
        reports: List[BoundReport] = []
        if k >= 2:
            reports.append(BoundReport(
                name="ng_upper.f_k", inputs={"k": k, "n": n},
                value=n / math.sqrt(2 * (k - 1)) - 1, side=BoundSide.UPPER,
                citation="f_k(n) <= n/sqrt(2(k-1)) - 1 for k >= 2, n >= 15(k-1)",
                premise_holds=n >= 15 * (k - 1),
            ))
        reports.append(BoundReport(
            name="ng_upper.f_minus_k", inputs={"k": k, "n": n},
            value=n / math.sqrt(2 * k) + 1, side=BoundSide.UPPER,
            citation="f_{-k}(n) <= n/sqrt(2k) + 1 for n >= 4^k",
            premise_holds=n >= 4 ** k,
        ))
        if k >= 2:
            reports.append(BoundReport(
                name="ng_upper.f_star_k", inputs={"k": k, "n": n},
                value=_exact(n, exact_sqrt(k - 1)), side=BoundSide.UPPER,
                citation="f_k*(n) <= 2 lambda_k*(n) <= n/sqrt(k-1)",
            ))
        return reports

    def ng_bracket(self, k: int) -> List[BoundReport]:
        self._check_k(k, 2)
        root2 = math.sqrt(2 * (k - 1))
        root = math.sqrt(k - 1)
        return [
            BoundReport(
                name="ng_bracket.f_k", inputs={"k": k}, value=1.0 / (root2 + math.sqrt(2)),
                side=BoundSide.BRACKET,
                citation="1/sqrt(2(k-1)) >= f_k > 1/(sqrt(2(k-1)) + sqrt(2))",
                lower=1.0 / (root2 + math.sqrt(2)), upper=1.0 / root2,
            ),
            BoundReport(
                name="ng_bracket.f_minus_k1", inputs={"k": k}, value=1.0 / (root2 + math.sqrt(2)),
                side=BoundSide.BRACKET,
                citation="1/sqrt(2(k-1)) >= f_{-k+1} > 1/(sqrt(2(k-1)) + sqrt(2))",
                lower=1.0 / (root2 + math.sqrt(2)), upper=1.0 / root2,
            ),
            BoundReport(
                name="ng_bracket.f_star_k", inputs={"k": k}, value=1.0 / (root + 1),
                side=BoundSide.BRACKET,
                citation="1/sqrt(k-1) >= f_k* > 1/(sqrt(k-1) + 1)",
                lower=1.0 / (root + 1), upper=_exact(1, exact_sqrt(k - 1)),
            ),
        ]

    # ------------------------------------------------------------------
    # Ky Fan norms and (-1,1)-matrices
    # ------------------------------------------------------------------

    def kyfan_upper(self, k: int, n: int) -> BoundReport:
        self._check_k(k, 1)
        if n < k:
            raise ValueError(f"Need n >= k, got n={n}, k={k}")
        value = _exact((1 + exact_sqrt(k)) * n, 2)
        return BoundReport(
            name="kyfan_upper", inputs={"k": k, "n": n}, value=value, side=BoundSide.UPPER,
            citation="xi_k(n) <= (1 + sqrt(k)) n / 2",
            notes=["attainment forces k to be a perfect square"],
        )

    def tau_bracket(self, k: int, n: int) -> BoundReport:
        self._check_k(k, 1)
        return BoundReport(
            name="tau_bracket", inputs={"k": k, "n": n},
            value=_exact((1 + exact_sqrt(k)) * n, 2), side=BoundSide.UPPER,
            citation="tau_k(n)/n <= (1 + sqrt(k))/2",
            upper=_exact(1 + exact_sqrt(k), 2),
            notes=["lower side (1/2 + sqrt(k) - o(k^(-2/5)))/2 < tau_k(n)/n is asymptotic only"],
        )

    def umn_bounds(self, k: int, n: int) -> List[BoundReport]:
        self._check_k(k, 1)
        s = math.isqrt(k)
        if s * s < k:
            s += 1
        root = exact_sqrt(k)
        return [
            BoundReport(
                name="umn_bounds.lambda_star", inputs={"k": k, "n": n}, value=_exact(n, root),
                side=BoundSide.UPPER,
                citation="Lambda_k(n) <= Lambda_k*(n) <= n/sqrt(k) over symmetric (-1,1)-matrices",
                notes=["equality for Lambda_k* whenever S_k is nonempty"],
            ),
            BoundReport(
                name="umn_bounds.d_star", inputs={"k": k}, value=Fraction(1, s), side=BoundSide.BRACKET,
                citation="1/sqrt(k) >= d_k* >= 1/s > 1/(sqrt(k) + 1), s the least integer with s^2 >= k",
                lower=Fraction(1, s), upper=_exact(1, root),
            ),
            BoundReport(
                name="umn_bounds.d", inputs={"k": k}, value=1.0 / (math.sqrt(k) + exact_cbrt(k)),
                side=BoundSide.BRACKET,
                citation="1/sqrt(k) >= d_k >= 1/(sqrt(k) + cbrt(k)) for large k",
                lower=1.0 / (math.sqrt(k) + exact_cbrt(k)), upper=_exact(1, root), asymptotic=True,
            ),
        ]

    def kyfan_pm_bracket(self, k: int, n: int) -> BoundReport:
        self._check_k(k, 1)
        root = exact_sqrt(k)
        return BoundReport(
            name="kyfan_pm_bracket", inputs={"k": k, "n": n}, value=(root - 1) * n, side=BoundSide.BRACKET,
            citation="(sqrt(k) - 1) n <= max ||A||_{*k} <= n sqrt(k) over symmetric (-1,1)-matrices",
            lower=(root - 1) * n, upper=root * n,
            notes=["stated without proof"],
        )

    def xi_limit_bracket(self, k: int) -> BoundReport:
        self._check_k(k, 1)
        root = exact_sqrt(k)
        lower, upper = _exact(root, 2), _exact(1 + root, 2)
        notes: List[str] = []
        if isinstance(root, int):
            notes.append("upper end attained: S_k holds a regular member with nonzero rowsums")
        return BoundReport(
            name="xi_limit_bracket", inputs={"k": k},
            value=upper if isinstance(root, int) else lower, side=BoundSide.BRACKET,
            citation="sqrt(k)/2 <= lim xi_k(n)/n <= (1 + sqrt(k))/2",
            lower=lower, upper=upper, asymptotic=True, notes=notes,
        )

    # ------------------------------------------------------------------
    # Dispatch and tables
    # ------------------------------------------------------------------

    @property
    def bound_names(self) -> List[str]:
        return sorted(self._evaluators)

    def evaluate(self, name: str, k: int, n: Optional[int] = None) -> List[BoundReport]:
        if name not in self._evaluators:
            raise ValueError(f"Unknown bound '{name}'. Known bounds: {', '.join(self.bound_names)}")
        evaluator, needs_n = self._evaluators[name]
        if needs_n and n is None:
            raise ValueError(f"Bound '{name}' needs --n")
        result = evaluator(k, n) if needs_n else evaluator(k)
        return result if isinstance(result, list) else [result]

    def bound_table(self, kind: str, k_max: int) -> pd.DataFrame:
        """One row per k with the known lower and upper ends of a constant."""
        builders = {
            "ck": self._ck_row,
            "ckstar": self._ckstar_row,
            "ng": self._ng_row,
            "kyfan": self._kyfan_row,
        }
        if kind not in builders:
            raise ValueError(f"Unknown table '{kind}'. Choose from {', '.join(builders)}")
        start = 1 if kind == "kyfan" else 2
        if k_max < start:
            raise ValueError(f"k_max must be at least {start}, got {k_max}")

        logger.info(f"Building bound table '{kind}' for k = {start}..{k_max}")
        df = pd.DataFrame([builders[kind](k) for k in range(start, k_max + 1)])
        df["crossing"] = df["lower"] > df["upper"]
        return df

    def _ck_row(self, k: int) -> dict:
        upper = float(self.ub_ck(k).value)
        if k == 2:
            return {"k": k, "lower": upper, "lower_source": "equality at k = 2", "upper": upper}

        q = self._taylor_prime(k)
        candidates = [(float(Fraction(q * q + 1, 2 * q ** 3)), f"taylor complement q={q}")]
        if k >= 5:
            candidates.append((float(self.lb_ck_explicit(k).value), "explicit"))
        lower, source = max(candidates)
        return {"k": k, "lower": lower, "lower_source": source, "upper": upper}

    def _ckstar_row(self, k: int) -> dict:
        upper = float(self.ub_ckstar(k).value)
        if k == 2:
            return {"k": k, "lower": upper, "constructive": upper, "upper": upper}
        bracket = self.bracket_ckstar(k)
        return {
            "k": k,
            "lower": float(bracket.lower),
            "constructive": float(bracket.witness["constructive_lower"]),
            "upper": upper,
        }

    def _ng_row(self, k: int) -> dict:
        f_k, _, f_star = self.ng_bracket(k)
        return {
            "k": k,
            "lower": float(f_k.lower),
            "upper": float(f_k.upper),
            "star_lower": float(f_star.lower),
            "star_upper": float(f_star.upper),
        }

    def _kyfan_row(self, k: int) -> dict:
        bracket = self.xi_limit_bracket(k)
        return {
            "k": k,
            "lower": float(bracket.lower),
            "upper": float(bracket.upper),
            "attained": is_square(k),
        }
