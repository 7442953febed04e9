"""
Exhaustive threshold computations: Schur S(r), van der Waerden W(k; r) and
the Disjoint Unions threshold DUT(r, k).

The search is a backtracking over colorings of {1..N}, element by element,
with the colors of a partial assignment kept in canonical form (a new color
is only ever the next unused one). ``product_space_avoiders`` is an
independent numpy oracle that scans the full product space {1..r}^N; every
report re-runs it on both sides of the threshold when that space is small.
"""

from __future__ import annotations

import itertools
import logging
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from hindlab import config
from hindlab.core.colorings.builtin import TableColoring
from hindlab.core.errors import BudgetExceededError, InvalidInputError
from .classical import all_patterns, schur_patterns_ending_at, vdw_patterns_ending_at
from .schemas import BudgetClock, SearchBudget, WitnessReport

logger = logging.getLogger(__name__)

PatternsEndingAt = Callable[[int], Iterable[Tuple[int, ...]]]

# 2**22 colorings is the largest product space the oracle materializes
MAX_PRODUCT_SPACE = 1 << 22
# reports cross-check against the oracle only below this size
ORACLE_CROSS_CHECK_SPACE = 1 << 16


def avoiding_coloring(N: int, r: int, patterns_ending_at: PatternsEndingAt,
                      clock: Optional[BudgetClock] = None) -> Optional[List[int]]:
    """A coloring of [1..N] with r colors where no listed pattern is monochromatic.

    Returns the colors (element i has color[i-1]) of the first avoiding
    coloring in canonical order, or None when every coloring has a
    monochromatic pattern.
    """
    clock = clock or SearchBudget().clock()
    patterns = [list(patterns_ending_at(z)) for z in range(1, N + 1)]
    colors = [0] * (N + 1)

    def extend(z: int, used: int) -> bool:
        if z > N:
            return True
        for c in range(1, min(used + 1, r) + 1):
            clock.tick()
            colors[z] = c
            if any(all(colors[e] == c for e in pattern) for pattern in patterns[z - 1]):
                continue
            if extend(z + 1, max(used, c)):
                return True
        colors[z] = 0
        return False

    return colors[1:] if extend(1, 0) else None


def product_space_avoiders(N: int, r: int, patterns: Iterable[Sequence[int]]) -> int:
    """Number of colorings of [1..N] avoiding every monochromatic pattern.

    Elements of a pattern are 1-based positions in [1..N].
    """
    if r ** N > MAX_PRODUCT_SPACE:
        raise BudgetExceededError(f"Product space {r}^{N} is too large for the exhaustive oracle",
                                  stats={"N": N, "r": r})
    colorings = np.indices((r,) * N).reshape(N, -1).T
    alive = np.ones(colorings.shape[0], dtype=bool)
    for pattern in patterns:
        columns = colorings[:, [e - 1 for e in pattern]]
        alive &= ~np.all(columns == columns[:, :1], axis=1)
    return int(alive.sum())


def _oracle_checks(report: WitnessReport, r: int, below: int, at: int,
                   patterns_ending_at: PatternsEndingAt) -> None:
    """Cross-check the backtracking verdicts on [1..below] and [1..at] when the product space is small."""
    if below >= 1 and r ** below <= ORACLE_CROSS_CHECK_SPACE:
        avoiders = product_space_avoiders(below, r, all_patterns(below, patterns_ending_at))
        report.check(f"product-space oracle finds avoiders on [1..{below}]", avoiders > 0)
    if r ** at <= ORACLE_CROSS_CHECK_SPACE:
        avoiders = product_space_avoiders(at, r, all_patterns(at, patterns_ending_at))
        report.check(f"product-space oracle finds no avoider on [1..{at}]", avoiders == 0)


def _threshold(name: str, r: int, patterns_ending_at: PatternsEndingAt,
               budget: Optional[SearchBudget], max_n: Optional[int] = None) -> WitnessReport:
    """Smallest N for which no r-coloring of [1..N] avoids the patterns."""
    budget = budget or SearchBudget()
    clock = budget.clock()
    certificate = None
    N = 1
    while True:
        if max_n is not None and N > max_n:
            raise BudgetExceededError(f"{name} threshold exceeds the guard N <= {max_n}",
                                      partial={"certificate": certificate}, stats=clock.stats())
        coloring = avoiding_coloring(N, r, patterns_ending_at, clock)
        if coloring is None:
            break
        certificate = coloring
        logger.debug("%s: an avoiding %d-coloring of [1..%d] exists", name, r, N)
        N += 1

    report = WitnessReport(f"threshold {name}", True, params={"r": r})
    report.witness = {"value": N}
    if certificate is not None:
        table = TableColoring(tuple(certificate), r)
        report.witness["certificate"] = certificate
        report.witness["classes"] = [list(c) for c in table.classes()]
        avoided = not any(
            len({certificate[e - 1] for e in p}) == 1
            for p in all_patterns(N - 1, patterns_ending_at)
        )
        report.check(f"certificate avoids every pattern in [1..{N - 1}]", avoided)
    _oracle_checks(report, r, N - 1, N, patterns_ending_at)
    report.stats = clock.stats()
    return report.require_verified()


def schur_threshold(r: int, budget: Optional[SearchBudget] = None) -> WitnessReport:
    """Minimal N such that every r-coloring of [1..N] has a monochromatic {x, y, x+y}."""
    if not 1 <= r <= 3:
        raise InvalidInputError(f"schur_threshold is guarded to 1 <= r <= 3, got {r}")
    return _threshold("schur", r, schur_patterns_ending_at, budget)


def vdw_threshold(k: int, r: int, budget: Optional[SearchBudget] = None) -> WitnessReport:
    """W(k; r): minimal N such that every r-coloring of [1..N] has a monochromatic k-AP."""
    if k < 2 or r < 1:
        raise InvalidInputError(f"vdw_threshold needs k >= 2 and r >= 1, got k={k}, r={r}")
    report = _threshold("vdw", r, vdw_patterns_ending_at(k), budget)
    report.params["k"] = k
    return report


def _partitions_into(mask: int, k: int) -> Iterable[Tuple[int, ...]]:
    """Unordered splits of the bits of ``mask`` into k nonempty blocks (block of the lowest bit first)."""
    if k == 0:
        if mask == 0:
            yield ()
        return
    if mask == 0:
        return
    low = mask & -mask
    rest = mask ^ low
    sub = rest
    # enumerate every subset of ``rest`` to join the lowest bit
    while True:
        block = low | sub
        for tail in _partitions_into(rest ^ sub, k - 1):
            yield (block,) + tail
        if sub == 0:
            break
        sub = (sub - 1) & rest


def union_masks(blocks: Sequence[int]) -> List[int]:
    unions = []
    for size in range(1, len(blocks) + 1):
        for chosen in itertools.combinations(blocks, size):
            acc = 0
            for b in chosen:
                acc |= b
            unions.append(acc)
    return unions


def dut_patterns_ending_at(k: int) -> PatternsEndingAt:
    """Subsets of [n] as bitmasks 1..2^n−1; patterns are all unions of k disjoint blocks with union z."""
    def patterns(z: int):
        for blocks in _partitions_into(z, k):
            yield tuple(sorted(set(union_masks(blocks))))
    return patterns


def dut_threshold(r: int, k: int, budget: Optional[SearchBudget] = None,
                  max_ground: Optional[int] = None) -> WitnessReport:
    """Minimal n such that every r-coloring of the nonempty subsets of [n] has k
    disjoint blocks with monochromatic unions."""
    if r < 1 or k < 1:
        raise InvalidInputError(f"dut_threshold needs r, k >= 1, got r={r}, k={k}")
    guard = config.MAX_DUT_GROUND if max_ground is None else max_ground
    budget = budget or SearchBudget()
    clock = budget.clock()
    patterns = dut_patterns_ending_at(k)
    certificate, n = None, 1
    while True:
        if n > guard:
            raise BudgetExceededError(f"DUT({r},{k}) exceeds the guard n <= {guard}",
                                      partial={"lower_bound": n, "certificate": certificate},
                                      stats=clock.stats())
        coloring = avoiding_coloring((1 << n) - 1, r, patterns, clock)
        if coloring is None:
            break
        certificate = {"n": n, "colors": coloring}
        logger.debug("DUT(%d,%d): an avoiding coloring of the subsets of [%d] exists", r, k, n)
        n += 1

    report = WitnessReport("threshold dut", True, params={"r": r, "k": k})
    report.witness = {"value": n}
    if certificate is not None:
        report.witness["certificate"] = certificate
        size, colors = (1 << certificate["n"]) - 1, certificate["colors"]
        avoided = not any(
            len({colors[mask - 1] for mask in p}) == 1
            for p in all_patterns(size, patterns)
        )
        report.check(f"certificate avoids every pattern on the {size} subsets of [{certificate['n']}]", avoided)
    _oracle_checks(report, r, (1 << (n - 1)) - 1, (1 << n) - 1, patterns)
    report.stats = clock.stats()
    return report.require_verified()
