"""
Why dilations belong inside H.

Searching a dilation orbit for a point where a fixed-point-free shift keeps
its color can fail for every point: under (u; x) ↦ 1 + ⌊x/u₁⌋ mod 2 the shift
x ↦ x + u₁ flips the color everywhere, and every dilation (q, q) preserves
x/u₁. The corrected route stabilizes against the dilations through
``stable_extension`` on colorings of 𝒞_S instead.
"""

from __future__ import annotations

import logging
from typing import Optional, Sequence

from hindlab.core.arithmetic.operations import rationals_up_to_height
from hindlab.core.colorings.schemas import PointColoring
from hindlab.core.patterns.schemas import SearchBudget, WitnessReport
from hindlab.core.perturbations.algebra import apply, pure_dilation
from hindlab.core.perturbations.schemas import PointX, Shift

logger = logging.getLogger(__name__)


def naive_shift_search(target: Shift, C: PointColoring, point: PointX,
                       scales: Optional[Sequence] = None,
                       budget: Optional[SearchBudget] = None) -> WitnessReport:
    """Scan R_{(q,q)}(pt) for q in ``scales`` (default: rationals up to the height bound)."""
    budget = budget or SearchBudget()
    clock = budget.clock()
    if scales is None:
        scales = rationals_up_to_height(min(budget.height_bound, 32))
    report = WitnessReport("search naive-shift", False, params={"orbit_size": len(scales)})
    for q in scales:
        clock.tick()
        candidate = apply(pure_dilation(q, q, target.omega), point)
        if C(apply(target, candidate)) == C(candidate):
            report.found = True
            report.witness = {"q": q, "u": list(candidate.u), "x": candidate.x}
            report.check("C(sigma(p)) = C(p)", True)
            break
    report.stats = clock.stats()
    logger.debug("Naive orbit search over %d scales: found=%s", len(scales), report.found)
    return report
