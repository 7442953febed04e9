from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from hindlab import config
from hindlab.core.arithmetic.schemas import PosRational, RatVector, pos
from hindlab.core.colorings.builtin import Val2Parity
from hindlab.core.colorings.schemas import Coloring
from hindlab.core.errors import InvalidInputError
from hindlab.core.patterns.schemas import Check, SearchBudget

MODES = ("lower", "full", "theorem1", "theorem2")
ROUTES = ("direct", "constructive", "auto")


@dataclass(frozen=True)
class PipelineConfig:
    """One pipeline run: ``n`` drives the build modes, ``k`` the witness modes."""

    mode: str = "theorem1"
    n: int = 2
    k: int = 2
    Q: Tuple[PosRational, ...] = (PosRational(1),)
    coloring: Coloring = field(default_factory=Val2Parity)
    budget: SearchBudget = field(default_factory=SearchBudget)
    route: str = "direct"
    jobs: int = field(default_factory=lambda: config.DEFAULT_JOBS)
    require_distinct: bool = False
    max_ground: Optional[int] = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise InvalidInputError(f"Unknown pipeline mode {self.mode!r}, expected one of {MODES}")
        if self.route not in ROUTES:
            raise InvalidInputError(f"Unknown route {self.route!r}, expected one of {ROUTES}")
        if self.n < 1 or self.k < 1:
            raise InvalidInputError(f"n and k must be >= 1, got n={self.n}, k={self.k}")
        if self.jobs < 1:
            raise InvalidInputError(f"jobs must be >= 1, got {self.jobs}")
        Q = tuple(dict.fromkeys(pos(q) for q in self.Q))
        if not Q:
            raise InvalidInputError("The dilation test set Q must be nonempty")
        object.__setattr__(self, "Q", Q)

    @property
    def r(self) -> int:
        return self.coloring.r


@dataclass
class HindmanWitness:
    """x⃗ with every pattern value carrying one color."""

    x: RatVector
    values: Dict[str, PosRational]
    color: int
    route: str = "direct"

    @property
    def distinct(self) -> bool:
        return len(set(self.x)) == len(self.x)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "x": list(self.x),
            "values": dict(self.values),
            "color": self.color,
            "distinct": self.distinct,
            "route": self.route,
        }


@dataclass
class ConsistentVector:
    """v⃗ with q·v⃗ consistent for every q ∈ Q, plus the per-stage build record."""

    v: RatVector
    Q: Tuple[PosRational, ...]
    mode: str
    checks: List[Check] = field(default_factory=list)
    stages: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> Dict[str, Any]:
        return {"v": list(self.v), "Q": list(self.Q), "mode": self.mode, "stages": self.stages}
