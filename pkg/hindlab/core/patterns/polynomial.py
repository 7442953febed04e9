from __future__ import annotations

import itertools
import logging
import math
from typing import Callable, Dict, Optional, Sequence, Tuple

from hindlab.core.errors import BudgetExceededError, InvalidInputError
from .schemas import GoodPolyVector, SearchBudget, WitnessReport

logger = logging.getLogger(__name__)

LatticePoint = Tuple[int, ...]
LatticeColoring = Callable[[LatticePoint], int]


def integrality_scale(P: Sequence[GoodPolyVector]) -> int:
    """N = lcm of every coefficient denominator; p(N·d′) is integral for d′ ∈ ℕ."""
    return math.lcm(1, *(p.denominator_lcm() for p in P))


def _integral(values) -> LatticePoint:
    point = []
    for v in values:
        if v.denominator != 1:
            raise InvalidInputError(f"Polynomial value {v} is not integral after rescaling")
        point.append(int(v.numerator))
    return tuple(point)


def pvdw_witness(P: Sequence[GoodPolyVector], coloring: LatticeColoring,
                 budget: Optional[SearchBudget] = None, window: Optional[int] = None) -> WitnessReport:
    """x̃ ∈ ℕ^Ω and d with C̃(x̃ + p(d)) = C̃(x̃) for every p ∈ P.

    Windows are the boxes [0..m]^Ω with d′ in 1..m, m doubling from 1; each
    window scans only the candidates it adds, d′ outer and x̃ in
    lexicographic order. The polynomials are rescaled to d = N·d′ with N
    from :func:`integrality_scale`. Shifted points may leave the box.
    """
    P = list(P)
    if not P:
        raise InvalidInputError("pvdw_witness needs at least one polynomial vector")
    omega = P[0].omega
    if any(p.omega != omega for p in P):
        raise InvalidInputError("All polynomial vectors must share one ratio index")
    budget = budget or SearchBudget()
    limit = window or budget.height_bound
    clock = budget.clock()

    N = integrality_scale(P)
    dim = len(omega)
    colors: Dict[LatticePoint, int] = {}

    def color(point: LatticePoint) -> int:
        if point not in colors:
            colors[point] = coloring(point)
        return colors[point]

    offsets: Dict[int, Tuple[LatticePoint, ...]] = {}
    previous, m = 0, 1
    while m <= limit:
        logger.debug("pvdW window m=%d over %d coordinates (scale N=%d)", m, dim, N)
        for d_prime in range(1, m + 1):
            if d_prime not in offsets:
                offsets[d_prime] = tuple(_integral(p.evaluate(N * d_prime)) for p in P)
            for z in itertools.product(range(m + 1), repeat=dim):
                if d_prime <= previous and all(c <= previous for c in z):
                    continue
                clock.tick(partial={"window": m})
                base = color(z)
                if all(color(tuple(a + b for a, b in zip(z, off))) == base for off in offsets[d_prime]):
                    report = WitnessReport("search pvdw", True, params={"omega_size": dim, "polys": len(P)})
                    report.witness = {
                        "x_tilde": list(z),
                        "d": N * d_prime,
                        "d_prime": d_prime,
                        "scale": N,
                        "window": m,
                        "color": base,
                    }
                    for i, off in enumerate(offsets[d_prime]):
                        shifted = tuple(a + b for a, b in zip(z, off))
                        report.check(f"C(x+p_{i + 1}(d)) = C(x)", coloring(shifted) == coloring(z))
                    report.stats = {**clock.stats(), "colors_cached": len(colors)}
                    return report.require_verified()
        previous, m = m, 2 * m

    raise BudgetExceededError(
        f"No polynomial van der Waerden witness in windows up to m={previous}",
        partial={"window": previous}, stats={**clock.stats(), "colors_cached": len(colors)},
    )
