from __future__ import annotations

import logging
from typing import Optional, Sequence

from hindlab.core.arithmetic.schemas import as_vector
from hindlab.core.colorings.consistency import ProductSubsetColoring
from hindlab.core.colorings.schemas import Coloring
from hindlab.core.errors import InvalidInputError
from .classical import folkman_witness, schur_witness, vdw_witness
from .disjoint_unions import dut_witness
from .polynomial import pvdw_witness
from .schemas import SearchBudget, WitnessReport
from .thresholds import dut_threshold, schur_threshold, vdw_threshold
from .utils import LatticeSumColoring, parse_poly_vectors

logger = logging.getLogger(__name__)

PATTERNS = ("schur", "vdw", "folkman", "dut", "pvdw")
SEARCH_MODES = ("witness", "threshold")

# longueur de motif par défaut
DEFAULT_K = {"vdw": 3, "folkman": 2, "dut": 2}


def run_pattern_search(pattern: str, mode: str = "witness", C: Optional[Coloring] = None,
                       budget: Optional[SearchBudget] = None, N: int = 20, k: Optional[int] = None,
                       r: int = 2, n: int = 4, v: Optional[Sequence] = None, distinct: bool = False,
                       polys: Sequence[str] = (), window: Optional[int] = None) -> WitnessReport:
    """One ``search`` request, shared by the CLI and the HTTP service."""
    if pattern not in PATTERNS:
        raise InvalidInputError(f"Unknown pattern {pattern!r}, expected one of {PATTERNS}")
    if mode not in SEARCH_MODES:
        raise InvalidInputError(f"Unknown search mode {mode!r}, expected one of {SEARCH_MODES}")
    budget = budget or SearchBudget()
    k = k or DEFAULT_K.get(pattern)
    logger.debug("search %s mode=%s k=%s", pattern, mode, k)

    if mode == "threshold":
        if pattern == "schur":
            return schur_threshold(r, budget)
        if pattern == "vdw":
            return vdw_threshold(k, r, budget)
        if pattern == "dut":
            return dut_threshold(r, k, budget)
        raise InvalidInputError(f"No threshold mode for {pattern}")

    if C is None:
        raise InvalidInputError(f"search {pattern} needs a coloring")
    if pattern == "schur":
        report = schur_witness(C, N, allow_equal=not distinct)
    elif pattern == "vdw":
        report = vdw_witness(C, k, N)
    elif pattern == "folkman":
        report = folkman_witness(C, k, budget)
    elif pattern == "dut":
        vec = as_vector(v) if v else as_vector(range(1, n + 1))
        if len(vec) != n:
            raise InvalidInputError(f"v has {len(vec)} entries but n is {n}")
        report = dut_witness(ProductSubsetColoring(C, vec), n, k, budget=budget)
    else:
        if not polys:
            raise InvalidInputError("search pvdw needs at least one polynomial vector")
        report = pvdw_witness(parse_poly_vectors(polys), LatticeSumColoring(C), budget, window)
    report.params["coloring"] = C.descriptor()
    return report
