from __future__ import annotations

import math
from typing import Iterable, List, Sequence

from hindlab.core.arithmetic.schemas import NonnegRational, PosRational, as_vector
from hindlab.core.errors import DimensionError, InvalidInputError
from .schemas import IndexSet, NFamily, RatioIndex, RatioPair, index_set


def part_product(part: Iterable[int], v) -> PosRational:
    """Π_{i∈part} v_i with 1-based indices (empty product is 1)."""
    return math.prod((v[i - 1] for i in part), start=PosRational(1))


def phi(fam: NFamily, v) -> PosRational:
    """φ_𝓘(v) = Σ_{I∈𝓘} Π_{i∈I} v_i."""
    v = as_vector(v)
    if len(v) != fam.ground:
        raise DimensionError(f"Family on [{fam.ground}] evaluated on a vector of length {len(v)}")
    return sum((part_product(p, v) for p in fam.parts), start=NonnegRational(0))


def leading_part(fam: NFamily) -> IndexSet:
    # parts are sorted by max element
    return fam.parts[-1]


def leading_term(fam: NFamily, v) -> PosRational:
    v = as_vector(v)
    if len(v) != fam.ground:
        raise DimensionError(f"Family on [{fam.ground}] evaluated on a vector of length {len(v)}")
    return part_product(leading_part(fam), v)


def compose(outer: NFamily, inner: Sequence[Iterable[int]], ground: int = None) -> NFamily:
    """𝓙∘𝓘 = {∪_{j∈J} I_j : J ∈ 𝓙}."""
    blocks = [index_set(b) for b in inner]
    if len(blocks) != outer.ground:
        raise InvalidInputError(f"Outer family is on [{outer.ground}] but {len(blocks)} blocks were given")
    seen: set = set()
    for block in blocks:
        if not block:
            raise InvalidInputError("Composition blocks must be nonempty")
        if seen & block:
            raise InvalidInputError(f"Composition blocks overlap on {sorted(seen & block)}")
        seen |= block
    if ground is None:
        ground = max(seen)
    parts = [frozenset().union(*(blocks[j - 1] for j in part)) for part in outer.parts]
    return NFamily(ground, tuple(parts))


def is_extreme(fam: NFamily) -> bool:
    return len(fam.parts) == 1 or max(len(p) for p in fam.parts) == 1


def is_lower(fam: NFamily) -> bool:
    return len(leading_part(fam)) == min(len(p) for p in fam.parts)


def is_new(fam: NFamily) -> bool:
    return fam.ground in leading_part(fam)


def newp(families: Iterable[NFamily]) -> RatioIndex:
    """All (A, B) with {A, B∪{n}} ⊆ 𝓘 for some 𝓘, where B = f(𝓘)∖{n}."""
    pairs: List[RatioPair] = []
    ground = None
    for fam in families:
        if ground is None:
            ground = fam.ground
        elif fam.ground != ground:
            raise InvalidInputError(f"newp needs a common ground, got {ground} and {fam.ground}")
        if not is_new(fam):
            raise InvalidInputError(f"Family {fam} is not new on ground {fam.ground}")
        lead = leading_part(fam)
        b = lead - {fam.ground}
        pairs.extend(RatioPair(a, b) for a in fam.parts if a != lead)
    return RatioIndex(tuple(pairs))
