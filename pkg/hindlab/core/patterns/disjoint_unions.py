"""
Disjoint Unions searches on colorings of the nonempty subsets of [n].

``dut_witness`` looks for the blocks directly. ``pseudo_dut_construct``
follows the constructive route for colorings of n-families: it homogenizes
the subset coloring on a set S (c(I) depends only on |I| for I ⊂ S), finds
a Folkman vector for the induced coloring of sizes, and cuts S into
max-ordered blocks of those sizes.
"""

from __future__ import annotations

import itertools
import logging
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from hindlab import config
from hindlab.core.colorings.builtin import TableColoring
from hindlab.core.errors import BudgetExceededError, InvalidInputError, NotFoundError, PreconditionError
from hindlab.core.families.calculus import compose, leading_part
from hindlab.core.families.enumeration import enumerate_extreme, enumerate_lower
from hindlab.core.families.schemas import NFamily, sorted_tuple
from .classical import folkman_witness
from .schemas import SearchBudget, WitnessReport

logger = logging.getLogger(__name__)

SubsetColoring = Callable[[FrozenSet[int]], int]


def _subsets_lex(ground: Sequence[int]) -> List[FrozenSet[int]]:
    """Nonempty subsets of ``ground`` in sorted-tuple lexicographic order."""
    subsets = [
        tuple(c) for size in range(1, len(ground) + 1) for c in itertools.combinations(sorted(ground), size)
    ]
    return [frozenset(s) for s in sorted(subsets)]


def _all_unions(blocks: Sequence[FrozenSet[int]]) -> List[FrozenSet[int]]:
    return [
        frozenset().union(*chosen)
        for size in range(1, len(blocks) + 1)
        for chosen in itertools.combinations(blocks, size)
    ]


def dut_witness(c: SubsetColoring, n: int, k: int, exhaustive: bool = True,
                budget: Optional[SearchBudget] = None,
                max_ground: Optional[int] = None) -> WitnessReport:
    """Disjoint nonempty I_1, …, I_k ⊂ [n] whose nonempty unions share one color.

    Blocks are chosen with increasing minimum, each among the subsets in
    sorted-tuple lexicographic order; the first witness in that order wins.
    ``exhaustive`` enforces the ground guard; otherwise only the budget bounds
    the backtracking.
    """
    if n < 1 or k < 1:
        raise InvalidInputError(f"dut_witness needs n, k >= 1, got n={n}, k={k}")
    guard = config.MAX_DUT_GROUND if max_ground is None else max_ground
    if exhaustive and n > guard:
        raise BudgetExceededError(f"Exhaustive DUT search on [{n}] exceeds the guard n <= {guard}",
                                  stats={"ground": n, "guard": guard})
    budget = budget or SearchBudget()
    clock = budget.clock()
    candidates = _subsets_lex(range(1, n + 1))
    cache: Dict[FrozenSet[int], int] = {}

    def color(subset: FrozenSet[int]) -> int:
        if subset not in cache:
            cache[subset] = c(subset)
        return cache[subset]

    blocks: List[FrozenSet[int]] = []

    def extend(unions: List[FrozenSet[int]], used: FrozenSet[int], target: Optional[int]) -> bool:
        if len(blocks) == k:
            return True
        floor = min(blocks[-1]) if blocks else 0
        for block in candidates:
            if min(block) <= floor or block & used:
                continue
            clock.tick(partial={"blocks": [list(sorted_tuple(b)) for b in blocks]})
            fresh = [block] + [u | block for u in unions]
            colors = {color(s) for s in fresh}
            if len(colors) != 1 or (target is not None and target not in colors):
                continue
            blocks.append(block)
            if extend(unions + fresh, used | block, colors.pop()):
                return True
            blocks.pop()
        return False

    report = WitnessReport("search dut", False, params={"n": n, "k": k, "exhaustive": exhaustive})
    if extend([], frozenset(), None):
        report.found = True
        unions = _all_unions(blocks)
        report.witness = {
            "blocks": [list(sorted_tuple(b)) for b in blocks],
            "color": color(blocks[0]),
        }
        report.check("blocks pairwise disjoint", sum(len(b) for b in blocks) == len(frozenset().union(*blocks)))
        report.check("all unions monochromatic", len({c(u) for u in unions}) == 1)
    report.stats = {**clock.stats(), "subsets_colored": len(cache)}
    return report.require_verified()


def _homogeneous_sets(c: SubsetColoring, n: int, min_size: int):
    """Subsets S ⊂ [n] (largest first, then lexicographic) on which c(I) = χ(|I|)."""
    for size in range(n, min_size - 1, -1):
        for S in itertools.combinations(range(1, n + 1), size):
            chi: Dict[int, int] = {}
            homogeneous = True
            for I in _subsets_lex(S):
                color = c(I)
                if chi.setdefault(len(I), color) != color:
                    homogeneous = False
                    break
            if homogeneous:
                yield S, tuple(chi[m] for m in range(1, size + 1))


def max_ordered_blocks(S: Sequence[int], sizes: Sequence[int]) -> List[FrozenSet[int]]:
    """Consecutive runs of sorted(S): max(I_1) < min(I_2) <= max(I_2) < … with |I_j| = sizes[j]."""
    ordered = sorted(S)
    blocks, start = [], 0
    for size in sizes:
        blocks.append(frozenset(ordered[start:start + size]))
        start += size
    return blocks


def check_lower_hypothesis(C_family, c: SubsetColoring, n: int) -> Optional[NFamily]:
    """First lower n-family with C′(𝓘) ≠ c(f(𝓘)), or None."""
    for fam in enumerate_lower(n):
        if C_family(fam) != c(leading_part(fam)):
            return fam
    return None


def pseudo_dut_construct(C_family, c: SubsetColoring, n: int, k: int, r: Optional[int] = None,
                         budget: Optional[SearchBudget] = None) -> WitnessReport:
    """Blocks I_1..I_k ⊂ [n] with {𝓙∘(I_j) : 𝓙 extreme k-family} monochromatic under C′.

    Requires C′(𝓘) = c(f(𝓘)) on every lower n-family; the hypothesis is
    checked exhaustively and a violation raises PreconditionError carrying
    the offending family.
    """
    if k < 1 or n < k:
        raise InvalidInputError(f"pseudo_dut_construct needs 1 <= k <= n, got k={k}, n={n}")
    violation = check_lower_hypothesis(C_family, c, n)
    if violation is not None:
        raise PreconditionError(
            f"C'({violation}) differs from c(f({violation})) on a lower family", witness=violation
        )
    budget = budget or SearchBudget()
    report = WitnessReport("construct pseudo-dut", False, params={"n": n, "k": k, "r": r})
    tried = 0
    for S, chi_table in _homogeneous_sets(c, n, k):
        tried += 1
        chi = TableColoring(chi_table, max(chi_table))
        try:
            folkman = folkman_witness(chi, k, budget, max_total=len(S))
        except NotFoundError:
            logger.debug("No Folkman vector fits in S=%s", S)
            continue
        m = folkman.witness["m"]
        blocks = max_ordered_blocks(S, m)
        composites = {str(J): compose(J, blocks, ground=n) for J in enumerate_extreme(k)}
        colors = {name: C_family(fam) for name, fam in composites.items()}

        report.found = True
        report.witness = {
            "blocks": [list(sorted_tuple(b)) for b in blocks],
            "m": m,
            "S": list(S),
            "chi": list(chi_table),
            "color": next(iter(colors.values())),
        }
        report.check("max-ordered blocks", all(max(a) < min(b) for a, b in zip(blocks, blocks[1:])))
        report.check("block sizes follow m", [len(b) for b in blocks] == list(m))
        report.check("extreme composites monochromatic", len(set(colors.values())) == 1)
        report.stats = {"homogeneous_sets_tried": tried, **folkman.stats}
        return report.require_verified()
    raise NotFoundError(f"No homogeneous set in [{n}] carries a Folkman vector of length {k}",
                        stats={"homogeneous_sets_tried": tried})
