"""
Consistency predicates and the colorings induced on families and subsets.

A vector v is 𝓘-consistent when C(φ_𝓘(v)) = C(Π_{i∈f(𝓘)} v_i). For partial
colorings an undefined color on either side makes the check fail.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Optional

from hindlab.core.arithmetic.schemas import RatVector, as_vector
from hindlab.core.errors import DimensionError
from hindlab.core.families.calculus import leading_part, leading_term, part_product, phi
from hindlab.core.families.schemas import NFamily, index_set
from .schemas import Coloring

logger = logging.getLogger(__name__)


def is_family_consistent(v, fam: NFamily, C: Coloring) -> bool:
    v = as_vector(v)
    value = phi(fam, v)
    lead = leading_term(fam, v)
    if not (C.defined(value) and C.defined(lead)):
        return False
    return C(value) == C(lead)


@dataclass(frozen=True)
class ConsistencyCheck:
    """Outcome of an 𝔛-consistency test; truthy iff every family passed."""

    ok: bool
    failing: Optional[NFamily] = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.ok


def is_X_consistent(v, families: Iterable[NFamily], C: Coloring) -> ConsistencyCheck:
    """Conjunction over 𝔛; stops at the first failing family."""
    v = as_vector(v)
    checked = 0
    ground = None
    for fam in families:
        if ground is None:
            ground = fam.ground
        elif fam.ground != ground:
            raise DimensionError(f"Families on grounds {ground} and {fam.ground} mixed in one check")
        checked += 1
        if not is_family_consistent(v, fam, C):
            logger.debug("v=%s fails on family %s", v, fam)
            return ConsistencyCheck(False, fam, checked)
    return ConsistencyCheck(True, None, checked)


@dataclass(frozen=True)
class FamilyColoring:
    """C′_v(𝓘) := C(φ_𝓘(v))."""

    base: Coloring
    v: RatVector

    def __post_init__(self):
        object.__setattr__(self, "v", as_vector(self.v))

    @property
    def r(self) -> int:
        return self.base.r

    @property
    def n(self) -> int:
        return len(self.v)

    def __call__(self, fam: NFamily) -> int:
        return self.base(phi(fam, self.v))


def family_coloring(C: Coloring, v) -> FamilyColoring:
    return FamilyColoring(C, as_vector(v))


@dataclass(frozen=True)
class ProductSubsetColoring:
    """c(I) := C(Π_{i∈I} v_i), a coloring of nonempty subsets of [n]."""

    base: Coloring
    v: RatVector

    def __post_init__(self):
        object.__setattr__(self, "v", as_vector(self.v))

    @property
    def r(self) -> int:
        return self.base.r

    def __call__(self, subset) -> int:
        return self.base(part_product(index_set(subset), self.v))


@dataclass(frozen=True)
class CardinalityColoring:
    """c(I) := χ(|I|)."""

    chi: Coloring

    @property
    def r(self) -> int:
        return self.chi.r

    def __call__(self, subset) -> int:
        return self.chi(len(index_set(subset)))


@dataclass(frozen=True)
class LeadingPartColoring:
    """C′(𝓘) := c(f(𝓘)); agrees with c∘f on every family."""

    subsets: object

    @property
    def r(self) -> int:
        return self.subsets.r

    def __call__(self, fam: NFamily) -> int:
        return self.subsets(leading_part(fam))
