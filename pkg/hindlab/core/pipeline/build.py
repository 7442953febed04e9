"""
Consistent vectors by induction on n.

At step n the first n−1 coordinates come from the step n−1 vector built for
the enlarged set Q′ = Q·Q_*, and the stable extension appends x′ while
rescaling u by some q_*. The old families only see q·q_*·u, so the step is
sound once q_* ∈ Q_*; when it is not, q_* joins Q_* and the step reruns.
"""

from __future__ import annotations

import logging
from typing import List, Optional, Sequence, Tuple

from hindlab.core.arithmetic.operations import scale
from hindlab.core.arithmetic.schemas import PosRational, RatVector, pos
from hindlab.core.colorings.consistency import is_X_consistent
from hindlab.core.colorings.schemas import Coloring
from hindlab.core.errors import NotFoundError, VerificationError
from hindlab.core.families.calculus import is_new
from hindlab.core.families.enumeration import enumerate_all_new, enumerate_families, enumerate_lower
from hindlab.core.patterns.schemas import Check, SearchBudget
from hindlab.core.stabilizers.extension import stable_extension
from .schemas import ConsistentVector

logger = logging.getLogger(__name__)

MAX_SCALE_ROUNDS = 4


def _target_families(n: int, mode: str, max_ground: Optional[int]):
    if mode == "lower":
        return enumerate_lower(n, max_ground)
    return enumerate_families(n, max_ground)


def _new_families(n: int, mode: str, max_ground: Optional[int]):
    if mode == "lower":
        return [f for f in enumerate_lower(n, max_ground) if is_new(f)]
    return enumerate_all_new(n, max_ground)


def _build(n: int, Q: Tuple[PosRational, ...], C: Coloring, mode: str, budget: SearchBudget,
           max_ground: Optional[int], stages: List[dict]) -> RatVector:
    if n == 1:
        # every 1-family is {{1}}: consistency is vacuous
        return RatVector.of(1)

    q_star = [PosRational(1)]
    for attempt in range(1, MAX_SCALE_ROUNDS + 1):
        Q_prime = tuple(sorted({q * s for q in Q for s in q_star}))
        sub_stages: List[dict] = []
        u = _build(n - 1, Q_prime, C, mode, budget, max_ground, sub_stages)
        ext = stable_extension(
            _new_families(n, mode, max_ground), Q, C, u, budget,
            mode="restricted" if mode == "lower" else "full",
        )
        logger.debug("n=%d attempt %d: scale=%s Q'=%s", n, attempt, ext.scale, Q_prime)
        if ext.scale in q_star:
            stages.extend(sub_stages)
            stages.append({
                "n": n,
                "Q": list(Q),
                "Q_star": list(q_star),
                "Q_prime": list(Q_prime),
                "u": list(u),
                "scale": ext.scale,
                "x_prime": ext.x_prime,
                "v": list(ext.v),
                "attempts": attempt,
                "extension": ext.transcript,
            })
            return ext.v
        q_star.append(ext.scale)

    raise NotFoundError(
        f"Scale set Q_* did not close within {MAX_SCALE_ROUNDS} rounds at n={n}",
        partial={"n": n, "Q_star": list(q_star)},
    )


def build_consistent(n: int, Q: Sequence, C: Coloring, mode: str = "lower",
                     budget: Optional[SearchBudget] = None,
                     max_ground: Optional[int] = None) -> ConsistentVector:
    Q = tuple(dict.fromkeys(pos(q) for q in Q)) or (PosRational(1),)
    budget = budget or SearchBudget()
    # guard the enumeration before any search starts
    targets = _target_families(n, mode, max_ground)
    stages: List[dict] = []
    v = _build(n, Q, C, mode, budget, max_ground, stages)

    result = ConsistentVector(v, Q, mode, stages=stages)
    for q in Q:
        check = is_X_consistent(scale(q, v), targets, C)
        result.checks.append(Check(f"q={q}: {mode} {n}-families consistent", bool(check)))
        if not check:
            raise VerificationError(f"Vector {v} fails on family {check.failing} for q={q}",
                                    [result.checks[-1].name], partial=result.to_dict())
    return result


def build_lower_consistent(n: int, Q: Sequence = (1,), C: Coloring = None,
                           budget: Optional[SearchBudget] = None,
                           max_ground: Optional[int] = None) -> ConsistentVector:
    """v⃗ ∈ ℚ₊ⁿ with q·v⃗ lower-consistent for every q ∈ Q."""
    return build_consistent(n, Q, C, "lower", budget, max_ground)


def build_full_consistent(n: int, Q: Sequence = (1,), C: Coloring = None,
                          budget: Optional[SearchBudget] = None,
                          max_ground: Optional[int] = None) -> ConsistentVector:
    """v⃗ ∈ ℚ₊ⁿ with q·v⃗ consistent on every n-family for every q ∈ Q."""
    return build_consistent(n, Q, C, "full", budget, max_ground)
