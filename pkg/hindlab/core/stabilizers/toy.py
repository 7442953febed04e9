"""
The generic stabilizer notions on the toy system X = ℕ with the maps
p_m(n) = max(n, m).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from hindlab.core.errors import InvalidInputError

NatColoring = Callable[[int], int]


@dataclass(frozen=True)
class MaxMap:
    m: int

    def __post_init__(self):
        if self.m < 0:
            raise InvalidInputError(f"MaxMap threshold must be >= 0, got {self.m}")

    def __call__(self, n: int) -> int:
        return max(n, self.m)

    def then(self, other: "MaxMap") -> "MaxMap":
        """self∘other; max maps compose to the larger threshold."""
        return MaxMap(max(self.m, other.m))


IDENTITY = MaxMap(0)


def compact_witness(C: NatColoring, P: Sequence[MaxMap], candidates: Iterable[int]) -> Optional[int]:
    """First x among ``candidates`` with C(p(x)) = C(x) for every p ∈ P."""
    for x in candidates:
        if all(C(p(x)) == C(x) for p in P):
            return x
    return None


def is_stabilizer(P_prime: Sequence[MaxMap], H: Sequence[MaxMap], p: MaxMap, C: NatColoring,
                  candidates: Iterable[int]) -> bool:
    """For every candidate x some p′ ∈ P′ gives C(p∘h∘p′(x)) = C(h∘p′(x)) for all h ∈ H."""
    for x in candidates:
        if not any(all(C(p(h(q(x)))) == C(h(q(x))) for h in H) for q in P_prime):
            return False
    return True
