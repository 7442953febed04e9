from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

from hindlab.core.arithmetic.schemas import PosRational, RatVector
from hindlab.core.errors import InvalidInputError
from hindlab.core.families.schemas import IndexSet, RatioIndex, index_set
from hindlab.core.patterns.schemas import Check
from hindlab.core.perturbations.schemas import RatioWeights


@dataclass(frozen=True)
class ShiftTask:
    """Support S, ratio index Ω with |A| + |S| > |B| on every pair, target weights Ξ."""

    S: IndexSet
    omega: RatioIndex
    xi: Tuple[RatioWeights, ...]
    r: int = 2

    def __post_init__(self):
        S = index_set(self.S)
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "xi", tuple(self.xi))
        for pair in self.omega:
            if len(pair.a) + len(S) <= len(pair.b):
                raise InvalidInputError(
                    f"Pair {pair} violates |A| + |S| > |B| with |S| = {len(S)}"
                )
        for weights in self.xi:
            if weights.omega != self.omega:
                raise InvalidInputError("Every weight vector of Ξ must live over the task's Ω")
        if self.r < 1:
            raise InvalidInputError(f"Range size must be >= 1, got {self.r}")


@dataclass
class ShiftResult:
    """(d, δ) for a task and the moved point: x′ = (x + δ·ρ_u)/d^{|S|}, u′ = d·u."""

    d: int
    delta: RatioWeights
    x_prime: PosRational
    u_prime: RatVector
    checks: List[Check] = field(default_factory=list)
    transcript: Dict[str, Any] = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "d": self.d,
            "delta": self.delta.as_dict(),
            "x_prime": self.x_prime,
            "u_prime": list(self.u_prime),
            "verified": [c.to_dict() for c in self.checks],
            "window_stats": self.transcript,
        }
