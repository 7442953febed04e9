from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Tuple

from hindlab.core.arithmetic.schemas import PosRational, pos
from hindlab.core.errors import InvalidInputError
from hindlab.core.families.schemas import IndexSet, index_set
from hindlab.core.perturbations.algebra import project_point
from hindlab.core.perturbations.schemas import Dilation
from .schemas import Coloring, PointColoring


@dataclass(frozen=True)
class ProjectedColoring(PointColoring):
    """Member of 𝒞_S: (u; x) ↦ C₀(x·Π_{s∈S} u_s)."""

    base: Coloring
    tag: IndexSet = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "tag", index_set(self.tag))

    @property
    def r(self) -> int:
        return self.base.r

    @property
    def support(self) -> IndexSet:
        return self.tag

    def defined(self, pt) -> bool:
        return self.base.defined(project_point(pt, self.tag))

    def color(self, pt) -> int:
        return self.base(project_point(pt, self.tag))


def project_coloring(C: Coloring, S: Iterable[int] = ()) -> ProjectedColoring:
    return ProjectedColoring(C, index_set(S))


@dataclass(frozen=True)
class ScaledTupleColoring(Coloring):
    """y ↦ 1 + Σ r^{i-1}(C₀(c_i·y) − 1): mixed-radix code of the scaled colors."""

    base: Coloring
    factors: Tuple[PosRational, ...]

    def __post_init__(self):
        if not self.factors:
            raise InvalidInputError("A scaled tuple coloring needs at least one factor")
        object.__setattr__(self, "factors", tuple(pos(c) for c in self.factors))

    @property
    def r(self) -> int:
        return self.base.r ** len(self.factors)

    def defined(self, q) -> bool:
        return all(self.base.defined(c * q) for c in self.factors)

    def color(self, q) -> int:
        code, radix = 0, 1
        for c in self.factors:
            code += (self.base(c * q) - 1) * radix
            radix *= self.base.r
        return 1 + code

    def descriptor(self) -> Dict[str, Any]:
        return {"kind": "scaled_tuple", "base": self.base.descriptor(), "factors": list(self.factors)}


def auxiliary(C: PointColoring, H: Iterable[Dilation]) -> ProjectedColoring:
    """C′ with C′(p₁) = C′(p₂) iff C(h(p₁)) = C(h(p₂)) for every h ∈ H.

    On 𝒞_S a dilation acts on the projection by a constant factor:
    π_S(R_{(q1,q2)}(pt)) = q2·q1^{|S|}·π_S(pt), so C′ stays in 𝒞_S.
    """
    if not isinstance(C, ProjectedColoring):
        raise InvalidInputError("The auxiliary coloring needs a coloring tagged with its support S")
    dilations = tuple(H)
    if not dilations:
        raise InvalidInputError("The auxiliary coloring needs a nonempty set H")
    exponent = len(C.tag)
    factors = tuple(h.q2 * h.q1 ** exponent for h in dilations)
    return ProjectedColoring(ScaledTupleColoring(C.base, factors), C.tag)


@dataclass(frozen=True)
class QuotientParity(PointColoring):
    """Untagged coloring (u; x) ↦ 1 + ⌊x / u₁⌋ mod 2.

    Every dilation (q, q) preserves x/u₁, so no dilation orbit escapes a color.
    """

    @property
    def r(self) -> int:
        return 2

    def color(self, pt) -> int:
        ratio = pt.x / pt.u[0]
        return 1 + math.floor(ratio) % 2
