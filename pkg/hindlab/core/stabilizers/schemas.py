from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from hindlab.core.arithmetic.schemas import PosRational, RatVector
from hindlab.core.colorings.points import ProjectedColoring
from hindlab.core.errors import InvalidInputError
from hindlab.core.families.schemas import RatioIndex
from hindlab.core.patterns.schemas import Check, SearchBudget
from hindlab.core.perturbations.schemas import Perturbation, PointX, Shift
from hindlab.core.shifting.schemas import ShiftResult


@dataclass(frozen=True)
class StabilizerTask:
    """Find p′ with C(σ∘h∘p′(pt)) = C(h∘p′(pt)) for every h ∈ H."""

    target: Shift
    H: Tuple[Perturbation, ...]
    coloring: ProjectedColoring
    point: PointX
    budget: SearchBudget = field(default_factory=SearchBudget)

    def __post_init__(self):
        object.__setattr__(self, "H", tuple(dict.fromkeys(self.H)))
        if not self.H:
            raise InvalidInputError("A stabilizer task needs a nonempty H")
        if any(h.omega != self.target.omega for h in self.H):
            raise InvalidInputError("Target shift and H must share one ratio index")
        if not isinstance(self.coloring, ProjectedColoring):
            raise InvalidInputError("Stabilizer colorings must be tagged with their support S")

    @property
    def omega(self) -> RatioIndex:
        return self.target.omega


@dataclass
class StabilizerResult:
    perturbation: Perturbation
    point: PointX
    shift: ShiftResult
    checks: List[Check] = field(default_factory=list)
    transcript: Dict[str, Any] = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return all(c.passed for c in self.checks)


@dataclass(frozen=True)
class MultiTaskStage:
    """One task of a multi-task instance: target shift σ_t, coloring C_t ∈ 𝒞_{S_t}, local index Ω_t."""

    target: Shift
    coloring: ProjectedColoring
    omega: Optional[RatioIndex] = None
    label: str = ""


@dataclass(frozen=True)
class MultiTaskInstance:
    """Stages in application order: stage 1 acts first on the point."""

    stages: Tuple[MultiTaskStage, ...]
    point: PointX
    base_H: Tuple[Perturbation, ...]
    budget: SearchBudget = field(default_factory=SearchBudget)
    max_rounds: int = 8

    def __post_init__(self):
        object.__setattr__(self, "stages", tuple(self.stages))
        object.__setattr__(self, "base_H", tuple(dict.fromkeys(self.base_H)))
        if not self.base_H:
            raise InvalidInputError("A multi-task instance needs a nonempty base H")
        if self.max_rounds < 1:
            raise InvalidInputError(f"max_rounds must be >= 1, got {self.max_rounds}")
        omegas = {s.target.omega for s in self.stages} | {h.omega for h in self.base_H}
        if len(omegas) > 1:
            raise InvalidInputError("All stages and H must share one ambient ratio index")


@dataclass
class MultiTaskResult:
    perturbation: Perturbation
    point: PointX
    stage_perturbations: List[Perturbation]
    checks: List[Check] = field(default_factory=list)
    transcript: List[Dict[str, Any]] = field(default_factory=list)
    rounds: int = 0

    @property
    def verified(self) -> bool:
        return all(c.passed for c in self.checks)


@dataclass
class ExtensionResult:
    """v = (scale·u, x′) with q·v 𝔛-consistent for every q ∈ Q."""

    scale: PosRational
    x_prime: PosRational
    v: RatVector
    checks: List[Check] = field(default_factory=list)
    transcript: Dict[str, Any] = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return all(c.passed for c in self.checks)
