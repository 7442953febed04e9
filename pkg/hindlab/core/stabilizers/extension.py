from __future__ import annotations

import logging
from typing import Iterable, List, Optional, Sequence

from hindlab.core.arithmetic.operations import scale
from hindlab.core.arithmetic.schemas import PosRational, as_vector, pos
from hindlab.core.colorings.consistency import is_X_consistent
from hindlab.core.colorings.points import project_coloring
from hindlab.core.colorings.schemas import Coloring
from hindlab.core.errors import InvalidInputError
from hindlab.core.families.calculus import is_new, leading_part, newp
from hindlab.core.families.schemas import NFamily, RatioIndex, family_sort_key
from hindlab.core.patterns.schemas import Check, SearchBudget, require_verified
from hindlab.core.perturbations.algebra import family_shift, pure_dilation
from hindlab.core.perturbations.schemas import PointX
from .engine import multitask
from .schemas import ExtensionResult, MultiTaskInstance, MultiTaskStage

logger = logging.getLogger(__name__)

MODES = ("restricted", "full")


def full_mode_order(families: Iterable[NFamily]) -> List[NFamily]:
    """Families by increasing |f(𝓘)|, ties in canonical order."""
    return sorted(families, key=lambda f: (len(leading_part(f)), family_sort_key(f)))


def _restricted_stages(multi: List[NFamily], omega: RatioIndex, C: Coloring) -> List[MultiTaskStage]:
    for pair in omega:
        if len(pair.a) <= len(pair.b):
            raise InvalidInputError(f"newp pair {pair} violates |A| > |B|; use the full mode")
    ordered = sorted(multi, key=family_sort_key)
    return [
        MultiTaskStage(family_shift(f, omega), project_coloring(C, leading_part(f) - {f.ground}), omega, str(f))
        for f in ordered
    ]


def _full_stages(multi: List[NFamily], omega: RatioIndex, C: Coloring) -> List[MultiTaskStage]:
    """Stage 1 carries the largest leading part; the back-tracking meets the stages by increasing |f|."""
    ordered = full_mode_order(multi)
    stages = []
    for i in range(len(ordered) - 1, -1, -1):
        fam = ordered[i]
        S = leading_part(fam) - {fam.ground}
        local = newp(ordered[: i + 1])
        for pair in local:
            if len(pair.a) + len(S) <= len(pair.b):
                raise InvalidInputError(f"Pair {pair} of the tail violates |A| + |S| > |B| at stage {fam}")
        stages.append(MultiTaskStage(family_shift(fam, omega), project_coloring(C, S), local, str(fam)))
    return stages


def stable_extension(families: Sequence[NFamily], Q: Sequence, C: Coloring, u,
                     budget: Optional[SearchBudget] = None, mode: str = "restricted",
                     max_rounds: int = 8) -> ExtensionResult:
    """Extend u ∈ ℚ₊^{n-1} to v = (scale·u, x′) with q·v 𝔛-consistent for every q ∈ Q."""
    if mode not in MODES:
        raise InvalidInputError(f"Unknown extension mode {mode!r}, expected one of {MODES}")
    u = as_vector(u)
    n = len(u) + 1
    Q = [pos(q) for q in dict.fromkeys(Q)] or [PosRational(1)]
    families = list(dict.fromkeys(families))
    for fam in families:
        if fam.ground != n or not is_new(fam):
            raise InvalidInputError(f"Family {fam} is not a new {n}-family")
    budget = budget or SearchBudget()

    # single-part families satisfy φ = leading term on every vector
    multi = [f for f in families if len(f.parts) > 1]
    omega = newp(multi) if multi else RatioIndex()
    stages = _restricted_stages(multi, omega, C) if mode == "restricted" else _full_stages(multi, omega, C)
    base_H = tuple(pure_dilation(q, q, omega) for q in Q)

    inst = MultiTaskInstance(tuple(stages), PointX(u, 1), base_H, budget, max_rounds)
    outcome = multitask(inst)
    q_scale = outcome.perturbation.dilation.q1
    v = outcome.point.as_vector()

    result = ExtensionResult(q_scale, outcome.point.x, v)
    result.checks.append(Check("u' = scale * u", outcome.point.u == scale(q_scale, u)))
    for q in Q:
        check = is_X_consistent(scale(q, v), families, C)
        result.checks.append(Check(f"q={q} consistent", bool(check)))
    result.checks.extend(outcome.checks)
    result.transcript = {
        "mode": mode,
        "n": n,
        "Q": list(Q),
        "omega_size": len(omega),
        "rounds": outcome.rounds,
        "stages": outcome.transcript,
    }
    logger.debug("Stable extension of %s: scale=%s x'=%s", u, q_scale, outcome.point.x)
    require_verified(result.checks, "Stable extension", stats={"rounds": outcome.rounds})
    return result
