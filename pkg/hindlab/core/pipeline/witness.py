"""
Pattern values of a candidate x⃗ and the independent re-verifier.

``verify_witness`` follows the ``(errors, computed)`` convention: it
recomputes every value and color from scratch and never trusts a report.
"""

from __future__ import annotations

import itertools
import logging
from typing import Any, Dict, List, Optional, Tuple

from hindlab.core.arithmetic.schemas import NonnegRational, PosRational, RatVector, as_vector
from hindlab.core.colorings.schemas import Coloring
from hindlab.core.errors import DimensionError
from hindlab.core.families.calculus import compose, part_product, phi
from hindlab.core.families.enumeration import enumerate_extreme, enumerate_families, extreme_pattern_families

logger = logging.getLogger(__name__)


def _subset_label(kind: str, subset: Tuple[int, ...]) -> str:
    # same text as str(NFamily): "|" between parts, "," inside a part
    sep = "|" if kind == "sum" else ","
    return f"{kind}:" + sep.join(str(i) for i in subset)


def pattern_values(x, k: Optional[int] = None) -> Dict[str, PosRational]:
    """Σ_{i∈I} x_i and Π_{j∈J} x_j over nonempty I, J ⊂ [k].

    Singletons are listed once, under ``sum``; the descriptors match
    ``extreme_pattern_families``.
    """
    x = as_vector(x)
    k = len(x) if k is None else k
    if k != len(x):
        raise DimensionError(f"Pattern on {k} variables evaluated on a vector of length {len(x)}")
    values: Dict[str, PosRational] = {}
    for size in range(1, k + 1):
        for subset in itertools.combinations(range(1, k + 1), size):
            values[_subset_label("sum", subset)] = sum(
                (x[i - 1] for i in subset), start=NonnegRational(0)
            )
            if size > 1:
                values[_subset_label("prod", subset)] = part_product(subset, x)
    return values


def generalized_pattern_values(x) -> Dict[str, PosRational]:
    """φ_𝓘(x⃗) over every k-family 𝓘: sums of disjoint products."""
    x = as_vector(x)
    return {str(fam): phi(fam, x) for fam in enumerate_families(len(x))}


def verify_witness(x, C: Coloring, generalized: bool = False,
                   color: Optional[int] = None) -> Tuple[List[str], Dict[str, Any]]:
    """Check that every pattern value of x⃗ carries one color.

    Sum/product values are cross-checked against φ on the extreme families.
    """
    errors: List[str] = []
    x = as_vector(x)
    values = generalized_pattern_values(x) if generalized else pattern_values(x)

    if not generalized:
        by_family = dict(extreme_pattern_families(len(x)))
        if len(by_family) != len(values):
            errors.append(f"Pattern has {len(values)} values but {len(by_family)} extreme families")
        for name, fam in by_family.items():
            if values.get(name) != phi(fam, x):
                errors.append(f"{name} = {values.get(name)} but phi gives {phi(fam, x)}")

    colors: Dict[str, int] = {}
    for name, value in values.items():
        if not C.defined(value):
            errors.append(f"Color of {name} = {value} is undefined")
            continue
        colors[name] = C(value)
    distinct_colors = sorted(set(colors.values()))
    if len(distinct_colors) > 1:
        errors.append(f"Pattern uses colors {distinct_colors}")
    if color is not None and distinct_colors and distinct_colors != [color]:
        errors.append(f"Recorded color {color} differs from computed {distinct_colors}")

    computed = {
        "values": values,
        "colors": colors,
        "color": distinct_colors[0] if len(distinct_colors) == 1 else None,
        "distinct": len(set(x)) == len(x),
    }
    return errors, computed


def reduction_holds(blocks, v: RatVector, x: RatVector, families=None) -> bool:
    """φ(𝓙∘I⃗, v⃗) = φ(𝓙, x⃗) for every 𝓙 (default: the extreme k-families)."""
    families = enumerate_extreme(len(x)) if families is None else families
    return all(phi(compose(J, blocks, ground=len(v)), v) == phi(J, x) for J in families)
