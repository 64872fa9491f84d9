from fractions import Fraction
from typing import Any, Dict, List, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from config import settings

Number = Union[Fraction, float]


def to_number(value: Any) -> Number:
    """Integers and Fractions stay exact; everything else becomes float."""
    if isinstance(value, bool):
        raise ValueError("Boolean is not a spectral value")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return float(value)


class Inertia(BaseModel):
    plus: int = Field(..., ge=0)
    zero: int = Field(..., ge=0)
    minus: int = Field(..., ge=0)

    @property
    def order(self) -> int:
        return self.plus + self.zero + self.minus


class SpectrumPoint(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    value: Number
    multiplicity: int = Field(..., ge=1)

    @field_validator('value', mode='before')
    @classmethod
    def coerce_value(cls, v):
        return to_number(v)


class PointSpectrum(BaseModel):
    """Eigenvalues with multiplicities, exact where the values are rational."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    points: List[SpectrumPoint]

    @field_validator('points')
    @classmethod
    def sort_descending(cls, v):
        return sorted(v, key=lambda p: float(p.value), reverse=True)

    @property
    def order(self) -> int:
        return sum(p.multiplicity for p in self.points)

    @property
    def exact(self) -> bool:
        return all(isinstance(p.value, Fraction) for p in self.points)

    def trace(self) -> Number:
        return sum((p.multiplicity * p.value for p in self.points), Fraction(0))

    def trace_of_squares(self) -> Number:
        return sum((p.multiplicity * p.value * p.value for p in self.points), Fraction(0))

    def values(self) -> List[float]:
        out: List[float] = []
        for p in self.points:
            out.extend([float(p.value)] * p.multiplicity)
        return out

    def lambda_k(self, k: int) -> Number:
        if not 1 <= k <= self.order:
            raise ValueError(f"k must be in [1, {self.order}], got {k}")
        seen = 0
        for p in self.points:
            seen += p.multiplicity
            if seen >= k:
                return p.value
        raise AssertionError("unreachable")

    def as_pairs(self) -> List[tuple]:
        return [(p.value, p.multiplicity) for p in self.points]

    @classmethod
    def from_pairs(cls, pairs) -> "PointSpectrum":
        return cls(points=[SpectrumPoint(value=v, multiplicity=m) for v, m in pairs if m > 0])


class Spectrum(BaseModel):
    """Floating eigenvalues of a symmetric matrix, sorted descending."""

    values: List[float]
    tolerance: float = Field(..., ge=0)

    @field_validator('values')
    @classmethod
    def check_sorted(cls, v):
        if any(v[i] < v[i + 1] for i in range(len(v) - 1)):
            raise ValueError("Spectrum values must be sorted descending")
        return v

    @property
    def order(self) -> int:
        return len(self.values)

    @property
    def spectral_radius(self) -> float:
        return max((abs(x) for x in self.values), default=0.0)

    @property
    def trace(self) -> float:
        return sum(self.values)

    def _check_k(self, k: int) -> None:
        if not 1 <= k <= self.order:
            raise ValueError(f"k must be in [1, {self.order}], got {k}")

    def lambda_k(self, k: int) -> float:
        self._check_k(k)
        return self.values[k - 1]

    def lambda_from_bottom(self, k: int) -> float:
        """lambda_{n-k+1}, the k-th smallest eigenvalue."""
        self._check_k(k)
        return self.values[self.order - k]

    def singular_values(self) -> List[float]:
        return sorted((abs(x) for x in self.values), reverse=True)

    def ky_fan(self, k: int) -> float:
        self._check_k(k)
        return sum(self.singular_values()[:k])

    def grouping_threshold(self, grouping: float = None) -> float:
        grouping = settings.MULTIPLICITY_GROUPING if grouping is None else grouping
        return grouping * max(self.spectral_radius, 1.0)

    def grouped(self, grouping: float = None) -> PointSpectrum:
        """Merge eigenvalues closer than the grouping threshold into one point."""
        threshold = self.grouping_threshold(grouping)
        clusters: List[List[float]] = []
        for x in self.values:
            if clusters and abs(clusters[-1][-1] - x) <= threshold:
                clusters[-1].append(x)
            else:
                clusters.append([x])
        points = []
        for cluster in clusters:
            mean = sum(cluster) / len(cluster)
            points.append(SpectrumPoint(value=0.0 if abs(mean) <= threshold else mean,
                                        multiplicity=len(cluster)))
        return PointSpectrum(points=points)

    def inertia(self, grouping: float = None) -> Inertia:
        threshold = self.grouping_threshold(grouping)
        plus = sum(1 for x in self.values if x > threshold)
        minus = sum(1 for x in self.values if x < -threshold)
        return Inertia(plus=plus, zero=self.order - plus - minus, minus=minus)


class SpectrumReport(BaseModel):
    order: int
    tolerance: float
    eigenvalues: List[float]
    singular_values: List[float]
    ky_fan: Dict[int, float] = Field(default_factory=dict)
