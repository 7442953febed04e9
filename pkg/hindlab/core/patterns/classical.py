"""
Schur, Folkman and van der Waerden witnesses for a given coloring.

Scans follow a fixed canonical order, so the witness returned is the
smallest one in that order.
"""

from __future__ import annotations

import itertools
import logging
from typing import FrozenSet, Iterator, Optional, Sequence, Tuple

from hindlab.core.colorings.schemas import Coloring
from hindlab.core.errors import BudgetExceededError, InvalidInputError, NotFoundError
from .schemas import SearchBudget, WitnessReport

logger = logging.getLogger(__name__)


def monochromatic_color(C, elements) -> Optional[int]:
    """Common color of ``elements`` under C, or None (undefined colors never match)."""
    color = None
    for e in elements:
        if hasattr(C, "defined") and not C.defined(e):
            return None
        c = C(e)
        if color is None:
            color = c
        elif c != color:
            return None
    return color


def schur_witness(C: Coloring, N: int, allow_equal: bool = True) -> WitnessReport:
    """First (x, y) with x <= y, x + y <= N and {x, y, x+y} monochromatic."""
    if N < 1:
        raise InvalidInputError(f"N must be >= 1, got {N}")
    report = WitnessReport("search schur", False, params={"N": N, "allow_equal": allow_equal})
    scanned = 0
    for x in range(1, N // 2 + 1):
        for y in range(x if allow_equal else x + 1, N - x + 1):
            scanned += 1
            color = monochromatic_color(C, (x, y, x + y))
            if color is not None:
                report.found = True
                report.witness = {"x": x, "y": y, "sum": x + y, "color": color}
                report.check("C(x) = C(y) = C(x+y)", C(x) == C(y) == C(x + y))
                report.stats = {"candidates": scanned}
                return report.require_verified()
    report.stats = {"candidates": scanned}
    return report


def vdw_witness(C: Coloring, k: int, N: int) -> WitnessReport:
    """First (a, d) in lexicographic order with a, a+d, …, a+(k−1)d <= N monochromatic."""
    if k < 2:
        raise InvalidInputError(f"Progression length must be >= 2, got {k}")
    report = WitnessReport("search vdw", False, params={"k": k, "N": N})
    scanned = 0
    for a in range(1, N + 1):
        for d in range(1, (N - a) // (k - 1) + 1):
            scanned += 1
            progression = [a + i * d for i in range(k)]
            color = monochromatic_color(C, progression)
            if color is not None:
                report.found = True
                report.witness = {"a": a, "d": d, "progression": progression, "color": color}
                report.check("progression monochromatic", len({C(p) for p in progression}) == 1)
                report.stats = {"candidates": scanned}
                return report.require_verified()
    report.stats = {"candidates": scanned}
    return report


def folkman_sums(m: Sequence[int]) -> FrozenSet[int]:
    """{Σ_{j∈J} m_j : J nonempty}."""
    if not m:
        raise InvalidInputError("folkman_sums needs a nonempty vector")
    sums = {0}
    for value in m:
        sums |= {s + value for s in sums}
    sums.discard(0)
    return frozenset(sums)


def _nonincreasing(length: int, top: int) -> Iterator[Tuple[int, ...]]:
    """Nonincreasing tuples with entries in [1..top], lexicographic order."""
    if length == 0:
        yield ()
        return
    for first in range(1, top + 1):
        for rest in _nonincreasing(length - 1, first):
            yield (first,) + rest


def folkman_witness(chi, k: int, budget: Optional[SearchBudget] = None,
                    max_total: Optional[int] = None) -> WitnessReport:
    """Nonincreasing m⃗ of length k whose subset sums are monochromatic under χ.

    Iterative deepening over the largest entry M = m₁; within a level the
    vectors come in lexicographic order. ``max_total`` bounds Σ m_j.
    """
    if k < 1:
        raise InvalidInputError(f"k must be >= 1, got {k}")
    budget = budget or SearchBudget()
    clock = budget.clock()
    report = WitnessReport("search folkman", False, params={"k": k})
    top = budget.height_bound if max_total is None else min(budget.height_bound, max_total)
    for M in range(1, top + 1):
        if max_total is not None and M + (k - 1) > max_total:
            break
        for rest in _nonincreasing(k - 1, M):
            m = (M,) + rest
            if max_total is not None and sum(m) > max_total:
                continue
            clock.tick()
            sums = folkman_sums(m)
            color = monochromatic_color(chi, sorted(sums))
            if color is None:
                continue
            report.found = True
            report.witness = {"m": list(m), "sums": sorted(sums), "color": color}
            report.check("subset sums monochromatic", len({chi(s) for s in sums}) == 1)
            report.stats = clock.stats()
            logger.debug("Folkman vector %s found at level M=%d", m, M)
            return report.require_verified()
    if max_total is not None and top == max_total:
        raise NotFoundError(f"No Folkman vector of length {k} with total <= {max_total}", stats=clock.stats())
    raise BudgetExceededError(f"No Folkman vector of length {k} with entries <= {top}", stats=clock.stats())


def schur_patterns_ending_at(z: int) -> Iterator[Tuple[int, ...]]:
    for x in range(1, z // 2 + 1):
        yield (x, z - x, z)


def vdw_patterns_ending_at(k: int):
    def patterns(z: int) -> Iterator[Tuple[int, ...]]:
        for d in range(1, (z - 1) // (k - 1) + 1):
            yield tuple(z - (k - 1 - i) * d for i in range(k))
    return patterns


def all_patterns(N: int, ending_at) -> Iterator[Tuple[int, ...]]:
    return itertools.chain.from_iterable(ending_at(z) for z in range(1, N + 1))
