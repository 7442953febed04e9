from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Tuple

from hindlab.core.arithmetic.schemas import NonnegRational, PosRational, RatVector, as_vector, nonneg, pos
from hindlab.core.errors import DimensionError, InvalidInputError
from hindlab.core.families.schemas import RatioIndex, RatioPair, index_set


@dataclass(frozen=True)
class PointX:
    """A point (u; x) of X = ℚ₊^{n-1} × ℚ₊."""

    u: RatVector
    x: PosRational

    def __post_init__(self):
        object.__setattr__(self, "u", as_vector(self.u))
        object.__setattr__(self, "x", pos(self.x))

    @property
    def n(self) -> int:
        return len(self.u) + 1

    def as_vector(self) -> RatVector:
        return self.u.extended(self.x)

    def __str__(self) -> str:
        return f"({', '.join(str(e) for e in self.u)}; {self.x})"


@dataclass(frozen=True)
class RatioWeights:
    """Nonnegative weights over Ω; entries follow Ω's canonical order."""

    omega: RatioIndex
    values: Tuple[NonnegRational, ...]

    def __post_init__(self):
        values = tuple(nonneg(v) for v in self.values)
        if len(values) != len(self.omega):
            raise DimensionError(f"{len(values)} weights given for an index of size {len(self.omega)}")
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, omega: RatioIndex) -> "RatioWeights":
        return cls(omega, tuple(NonnegRational(0) for _ in omega))

    @classmethod
    def from_mapping(cls, omega: RatioIndex, weights: Mapping) -> "RatioWeights":
        """Build from {pair: weight}; missing pairs are 0, unknown pairs are rejected."""
        normalized: Dict[RatioPair, Fraction] = {}
        for pair, w in weights.items():
            key = RatioPair(index_set(pair[0]), index_set(pair[1]))
            if key not in omega:
                raise InvalidInputError(f"Pair {key} is not in the ambient index")
            normalized[key] = w
        return cls(omega, tuple(normalized.get(p, 0) for p in omega))

    def __getitem__(self, pair) -> NonnegRational:
        return self.values[self.omega.position(pair)]

    def __iter__(self) -> Iterator[NonnegRational]:
        return iter(self.values)

    def items(self) -> Iterable[Tuple[RatioPair, NonnegRational]]:
        return zip(self.omega.pairs, self.values)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def support(self) -> Tuple[RatioPair, ...]:
        return tuple(p for p, v in self.items() if v != 0)

    def _same_omega(self, other: "RatioWeights") -> None:
        if self.omega != other.omega:
            raise InvalidInputError("Weights live over different ratio indices")

    def __add__(self, other: "RatioWeights") -> "RatioWeights":
        self._same_omega(other)
        return RatioWeights(self.omega, tuple(a + b for a, b in zip(self.values, other.values)))

    def scaled(self, q) -> "RatioWeights":
        q = nonneg(q)
        return RatioWeights(self.omega, tuple(q * v for v in self.values))

    def hadamard(self, other: "RatioWeights") -> "RatioWeights":
        self._same_omega(other)
        return RatioWeights(self.omega, tuple(a * b for a, b in zip(self.values, other.values)))

    def dot(self, other: "RatioWeights") -> NonnegRational:
        self._same_omega(other)
        return sum((a * b for a, b in zip(self.values, other.values)), start=NonnegRational(0))

    def embedded(self, omega: RatioIndex) -> "RatioWeights":
        """Same weights over a larger index (new pairs get 0)."""
        return RatioWeights.from_mapping(omega, dict(self.items()))

    def restricted(self, omega: RatioIndex) -> "RatioWeights":
        """Drop pairs outside ``omega``; dropped pairs must carry weight 0."""
        for pair, value in self.items():
            if value != 0 and pair not in omega:
                raise InvalidInputError(f"Pair {pair} carries weight {value} outside the target index")
        return RatioWeights.from_mapping(omega, {p: v for p, v in self.items() if p in omega})

    def as_dict(self) -> Dict[str, NonnegRational]:
        return {str(p): v for p, v in self.items()}


@dataclass(frozen=True)
class Shift:
    """σ_λ: (u; x) ↦ (u; x + λ·ρ_u)."""

    weights: RatioWeights

    @property
    def omega(self) -> RatioIndex:
        return self.weights.omega


@dataclass(frozen=True)
class Dilation:
    """R_{(q1,q2)}: (u; x) ↦ (q1·u; q2·x)."""

    q1: PosRational
    q2: PosRational

    def __post_init__(self):
        object.__setattr__(self, "q1", pos(self.q1))
        object.__setattr__(self, "q2", pos(self.q2))

    @property
    def is_identity(self) -> bool:
        return self.q1 == 1 and self.q2 == 1


@dataclass(frozen=True)
class Perturbation:
    """Normal form σ_λ ∘ R_{q*}: dilation first, then shift."""

    shift: Shift
    dilation: Dilation

    @property
    def omega(self) -> RatioIndex:
        return self.shift.omega

    @property
    def is_identity(self) -> bool:
        return self.dilation.is_identity and self.shift.weights.is_zero()
