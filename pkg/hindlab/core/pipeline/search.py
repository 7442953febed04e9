"""
Monochromatic sum/product witnesses.

The direct route scans x_1 ≤ … ≤ x_k by height level: level h holds the
tuples over rationals of height ≤ h that use at least one of height exactly
h, in lexicographic order of values. Prefixes are pruned as soon as their
own pattern stops being monochromatic. Chunks of one level (one per first
coordinate) can run in a process pool; the level's witness is the one from
the lowest chunk and the candidate budget is charged chunk by chunk in
order, so neither the answer nor the budget verdict depends on ``jobs``.

The constructive route builds a consistent v⃗ on a larger ground, cuts it
into blocks with a Disjoint Unions search and multiplies the blocks out.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from hindlab import config
from hindlab.core.arithmetic.operations import rational_height, rationals_up_to_height
from hindlab.core.arithmetic.schemas import NonnegRational, PosRational, RatVector, as_vector
from hindlab.core.colorings.consistency import ProductSubsetColoring, family_coloring
from hindlab.core.colorings.schemas import Coloring
from hindlab.core.errors import BudgetExceededError, InvalidInputError, NotFoundError
from hindlab.core.families.calculus import part_product
from hindlab.core.families.enumeration import enumerate_families
from hindlab.core.families.schemas import index_set
from hindlab.core.patterns.disjoint_unions import dut_witness, pseudo_dut_construct
from hindlab.core.patterns.schemas import SearchBudget, WitnessReport
from .build import build_full_consistent, build_lower_consistent
from .schemas import HindmanWitness, PipelineConfig
from .witness import generalized_pattern_values, pattern_values, reduction_holds, verify_witness

logger = logging.getLogger(__name__)


@dataclass
class ChunkOutcome:
    """Result of scanning the tuples of one level that start at ``first``."""

    first: int
    witness: Optional[Tuple[PosRational, ...]] = None
    color: Optional[int] = None
    best: Tuple[PosRational, ...] = ()
    candidates: int = 0
    exhausted_budget: bool = False


@dataclass
class _Prefix:
    """Subset sums and products of the current prefix, empty subset included."""

    sums: List[NonnegRational] = field(default_factory=lambda: [NonnegRational(0)])
    prods: List[PosRational] = field(default_factory=lambda: [PosRational(1)])


def _extends_monochromatic(C: Coloring, prefix: _Prefix, value: PosRational, color: int) -> Optional[_Prefix]:
    """New pattern values created by appending ``value``; None if one leaves ``color``."""
    new_sums = [s + value for s in prefix.sums]
    new_prods = [p * value for p in prefix.prods]
    for q in new_sums + new_prods[1:]:
        if not C.defined(q) or C(q) != color:
            return None
    return _Prefix(prefix.sums + new_sums, prefix.prods + new_prods)


def _generalized_ok(C: Coloring, x: Sequence[PosRational], color: int) -> bool:
    return all(C.defined(q) and C(q) == color for q in generalized_pattern_values(x).values())


def scan_chunk(C: Coloring, k: int, values: Sequence[PosRational], level: int, first: int,
               require_distinct: bool, max_candidates: int, max_seconds: float,
               generalized: bool = False) -> ChunkOutcome:
    """Depth-first scan of the level-``level`` tuples whose first coordinate is values[first].

    With ``generalized`` a full tuple must also color every φ_𝓘 alike; the
    pruning still uses the sum/product pattern, which is contained in it.
    """
    outcome = ChunkOutcome(first)
    start = time.perf_counter()
    x0 = values[first]
    if not C.defined(x0):
        return outcome
    color = C(x0)
    root = _Prefix([NonnegRational(0), x0], [PosRational(1), x0])
    chosen = [x0]
    outcome.best = (x0,)

    def extend(prefix: _Prefix, last: int, has_level: bool) -> bool:
        if len(chosen) == k:
            return has_level and (not generalized or _generalized_ok(C, chosen, color))
        for j in range(last + 1 if require_distinct else last, len(values)):
            outcome.candidates += 1
            if outcome.candidates > max_candidates or (
                outcome.candidates & 0xFF == 0 and time.perf_counter() - start > max_seconds
            ):
                outcome.exhausted_budget = True
                return False
            value = values[j]
            grown = _extends_monochromatic(C, prefix, value, color)
            if grown is None:
                continue
            chosen.append(value)
            if len(chosen) > len(outcome.best):
                outcome.best = tuple(chosen)
            if extend(grown, j, has_level or rational_height(value) == level):
                return True
            chosen.pop()
            if outcome.exhausted_budget:
                return False
        return False

    if extend(root, first, rational_height(x0) == level):
        outcome.witness = tuple(chosen)
        outcome.color = color
    return outcome


def _level_outcomes(pool: Optional[ProcessPoolExecutor], C: Coloring, k: int,
                    values: Tuple[PosRational, ...], level: int, require_distinct: bool,
                    max_candidates: int, max_seconds: float, generalized: bool) -> List[ChunkOutcome]:
    if pool is None:
        outcomes = []
        for first in range(len(values)):
            out = scan_chunk(C, k, values, level, first, require_distinct, max_candidates, max_seconds, generalized)
            outcomes.append(out)
            max_candidates -= out.candidates
            # sequential scan stops at the first chunk with a witness
            if out.witness is not None or out.exhausted_budget or max_candidates < 1:
                break
        return outcomes
    # every chunk runs against the whole level budget; the outcomes are then
    # charged in order against one shared budget, as the sequential scan does
    args = [(C, k, values, level, i, require_distinct, max_candidates, max_seconds, generalized)
            for i in range(len(values))]
    outcomes = []
    for out in pool.map(scan_chunk, *zip(*args)):
        if out.candidates > max_candidates:
            # the shared budget runs out inside this chunk: rescan it with what is left
            out = scan_chunk(C, k, values, level, out.first, require_distinct, max_candidates, max_seconds,
                             generalized)
        outcomes.append(out)
        max_candidates -= out.candidates
        if out.witness is not None or out.exhausted_budget or max_candidates < 1:
            break
    return outcomes


def direct_search(k: int, C: Coloring, budget: Optional[SearchBudget] = None, jobs: int = 1,
                  require_distinct: bool = False, generalized: bool = False) -> HindmanWitness:
    """Smallest-height x⃗ (then lexicographic) with a monochromatic pattern."""
    if k < 1:
        raise InvalidInputError(f"k must be >= 1, got {k}")
    if jobs < 1:
        raise InvalidInputError(f"jobs must be >= 1, got {jobs}")
    budget = budget or SearchBudget()
    start = time.perf_counter()
    used = 0
    best: Tuple[PosRational, ...] = ()
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for level in range(1, budget.height_bound + 1):
            values = rationals_up_to_height(level)
            remaining_seconds = budget.max_seconds - (time.perf_counter() - start)
            remaining = budget.max_candidates - used
            if remaining < 1 or remaining_seconds <= 0:
                raise _budget_error(k, level, best, used, start)
            outcomes = _level_outcomes(pool, C, k, values, level, require_distinct, remaining,
                                       remaining_seconds, generalized)
            used += sum(o.candidates for o in outcomes)
            for o in outcomes:
                if len(o.best) > len(best):
                    best = o.best
            logger.debug("Level %d: %d values, %d candidates so far", level, len(values), used)
            for o in sorted(outcomes, key=lambda o: o.first):
                if o.witness is None:
                    if o.exhausted_budget:
                        raise _budget_error(k, level, best, used, start)
                    continue
                x = as_vector(o.witness)
                if generalized:
                    return HindmanWitness(x, generalized_pattern_values(x), o.color, route="direct")
                return HindmanWitness(x, pattern_values(x), o.color, route="direct")
            if used > budget.max_candidates:
                raise _budget_error(k, level, best, used, start)
    finally:
        if pool is not None:
            pool.shutdown()
    raise BudgetExceededError(
        f"No monochromatic pattern of length {k} up to height {budget.height_bound}",
        partial=_partial(best), stats={"candidates": used, "elapsed_ms": _ms(start)},
    )


def _ms(start: float) -> int:
    return int((time.perf_counter() - start) * 1000)


def _partial(best: Sequence[PosRational]) -> Dict[str, Any]:
    return {"x": list(best), "length": len(best)}


def _budget_error(k: int, level: int, best, used: int, start: float) -> BudgetExceededError:
    logger.warning("Direct search for k=%d stopped at height %d after %d candidates", k, level, used)
    return BudgetExceededError(
        f"Budget exhausted at height {level} while searching a pattern of length {k}",
        partial=_partial(best), stats={"candidates": used, "elapsed_ms": _ms(start)},
    )


def _blocks_to_x(blocks: Sequence[Sequence[int]], v: RatVector) -> RatVector:
    return as_vector(part_product(index_set(b), v) for b in blocks)


def _guard(max_ground: Optional[int]) -> int:
    return config.MAX_GROUND if max_ground is None else max_ground


def constructive_witness(k: int, C: Coloring, budget: Optional[SearchBudget] = None,
                         max_ground: Optional[int] = None) -> Tuple[HindmanWitness, Dict[str, Any]]:
    """Lower-consistent v⃗ on [n], pseudo Disjoint Unions blocks, x_j := Π_{i∈I_j} v_i.

    n grows from k until a block decomposition exists or the guard is hit.
    """
    budget = budget or SearchBudget()
    last_error: Optional[Exception] = None
    for n in range(k, _guard(max_ground) + 1):
        try:
            built = build_lower_consistent(n, (1,), C, budget, max_ground)
            v = built.v
            report = pseudo_dut_construct(family_coloring(C, v), ProductSubsetColoring(C, v), n, k, C.r, budget)
        except NotFoundError as e:
            logger.debug("Constructive route at n=%d: %s", n, e)
            last_error = e
            continue
        blocks = [index_set(b) for b in report.witness["blocks"]]
        x = _blocks_to_x(blocks, v)
        trace = {
            "n": n,
            "v": list(v),
            "blocks": report.witness["blocks"],
            "m": report.witness["m"],
            "checks": [c.to_dict() for c in built.checks + report.checks],
            "reduction": reduction_holds(blocks, v, x),
        }
        return HindmanWitness(x, pattern_values(x), report.witness["color"], route="constructive"), trace
    raise NotFoundError(
        f"Constructive route found no blocks for k={k} up to n={_guard(max_ground)}",
        partial={"last_error": str(last_error) if last_error else None},
    )


def constructive_generalized(k: int, C: Coloring, budget: Optional[SearchBudget] = None,
                             max_ground: Optional[int] = None) -> Tuple[HindmanWitness, Dict[str, Any]]:
    """Fully consistent v⃗, Disjoint Unions blocks for c(I) = C(Π_{i∈I} v_i), x_j := Π_{i∈I_j} v_i."""
    budget = budget or SearchBudget()
    guard = min(_guard(max_ground), config.MAX_DUT_GROUND)
    last_error: Optional[Exception] = None
    for n in range(k, guard + 1):
        try:
            built = build_full_consistent(n, (1,), C, budget, max_ground)
            v = built.v
            report = dut_witness(ProductSubsetColoring(C, v), n, k, budget=budget, max_ground=guard)
        except NotFoundError as e:
            logger.debug("Constructive generalized route at n=%d: %s", n, e)
            last_error = e
            continue
        if not report.found:
            logger.debug("No DUT blocks of length %d on [%d]", k, n)
            continue
        blocks = [index_set(b) for b in report.witness["blocks"]]
        x = _blocks_to_x(blocks, v)
        trace = {
            "n": n,
            "v": list(v),
            "blocks": report.witness["blocks"],
            "checks": [c.to_dict() for c in built.checks + report.checks],
            "reduction": reduction_holds(blocks, v, x, families=enumerate_families(k)),
        }
        return HindmanWitness(x, generalized_pattern_values(x), report.witness["color"], route="constructive"), trace
    raise NotFoundError(
        f"Constructive generalized route found no blocks for k={k} up to n={guard}",
        partial={"last_error": str(last_error) if last_error else None},
    )


def _finish(command: str, witness: HindmanWitness, C: Coloring, generalized: bool,
            params: Dict[str, Any], stats: Dict[str, Any], trace: Optional[Dict[str, Any]] = None) -> WitnessReport:
    errors, computed = verify_witness(witness.x, C, generalized=generalized, color=witness.color)
    report = WitnessReport(command, True, witness.to_dict(), params=params, stats=stats)
    report.check("pattern values recomputed", computed["values"] == witness.values)
    report.check("pattern monochromatic", not errors)
    if trace is not None:
        report.witness["construction"] = trace
        report.check("block reduction identity", trace["reduction"])
    if errors:
        logger.error("Witness %s failed re-verification: %s", witness.x, errors)
    return report.require_verified()


def hindman_witness(k: int, C: Coloring, budget: Optional[SearchBudget] = None, route: str = "direct",
                    jobs: int = 1, require_distinct: bool = False,
                    max_ground: Optional[int] = None) -> WitnessReport:
    """x⃗ of length k with {Σ_I x_i} ∪ {Π_J x_j} monochromatic under C."""
    return _dispatch("hindman", k, C, budget, route, jobs, require_distinct, max_ground, generalized=False)


def generalized_witness(k: int, C: Coloring, budget: Optional[SearchBudget] = None, route: str = "direct",
                        jobs: int = 1, require_distinct: bool = False,
                        max_ground: Optional[int] = None) -> WitnessReport:
    """x⃗ of length k with every φ_𝓘(x⃗), 𝓘 a k-family, of one color."""
    return _dispatch("hindman generalized", k, C, budget, route, jobs, require_distinct, max_ground,
                     generalized=True)


def _dispatch(command: str, k: int, C: Coloring, budget: Optional[SearchBudget], route: str, jobs: int,
              require_distinct: bool, max_ground: Optional[int], generalized: bool) -> WitnessReport:
    budget = budget or SearchBudget()
    params = {"k": k, "route": route, "jobs": jobs, "require_distinct": require_distinct,
              "height": budget.height_bound, "coloring": C.descriptor()}
    start = time.perf_counter()
    direct_error: Optional[NotFoundError] = None
    if route in ("direct", "auto"):
        try:
            witness = direct_search(k, C, budget, jobs, require_distinct, generalized)
        except NotFoundError as e:
            if route == "direct":
                raise
            logger.info("Direct search gave up (%s); trying the constructive route", e)
            direct_error = e
        else:
            return _finish(command, witness, C, generalized, params, {"elapsed_ms": _ms(start)})
    elif route != "constructive":
        raise InvalidInputError(f"Unknown route {route!r}")

    build = constructive_generalized if generalized else constructive_witness
    try:
        witness, trace = build(k, C, budget, max_ground)
    except NotFoundError as e:
        if direct_error is not None:
            e.partial = {**direct_error.partial, "constructive": e.partial}
        raise
    if require_distinct and not witness.distinct:
        raise NotFoundError(f"Constructive witness {witness.x} repeats a value",
                            partial={"x": list(witness.x)})
    return _finish(command, witness, C, generalized, params, {"elapsed_ms": _ms(start)}, trace)


def run_pipeline(cfg: PipelineConfig) -> Dict[str, Any]:
    """Dispatch one configured pipeline run and return its JSON-ready payload."""
    logger.info("Pipeline mode=%s n=%d k=%d route=%s", cfg.mode, cfg.n, cfg.k, cfg.route)
    if cfg.mode in ("lower", "full"):
        builder = build_lower_consistent if cfg.mode == "lower" else build_full_consistent
        result = builder(cfg.n, cfg.Q, cfg.coloring, cfg.budget, cfg.max_ground)
        return {
            "command": f"build {cfg.mode}",
            "found": True,
            "witness": result.to_dict(),
            "checks": [c.to_dict() for c in result.checks],
            "params": {"n": cfg.n, "Q": list(cfg.Q), "coloring": cfg.coloring.descriptor()},
        }
    search = hindman_witness if cfg.mode == "theorem1" else generalized_witness
    report = search(cfg.k, cfg.coloring, cfg.budget, cfg.route, cfg.jobs, cfg.require_distinct, cfg.max_ground)
    return report.to_dict()
