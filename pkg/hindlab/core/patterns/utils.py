from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

from sympy import Poly, QQ, SympifyError, sympify

from hindlab.core.colorings.schemas import Coloring
from hindlab.core.errors import InvalidInputError, ParseError
from hindlab.core.families.schemas import RatioIndex, RatioPair
from .schemas import GoodPolyVector, X


def coordinate_omega(dim: int) -> RatioIndex:
    """Ω = ({1}|), …, ({dim}|): one lattice coordinate per pair."""
    return RatioIndex(tuple(RatioPair(frozenset({i}), frozenset()) for i in range(1, dim + 1)))


def parse_poly_vector(text: str, omega: RatioIndex = None) -> GoodPolyVector:
    """Decode "X**2, 3*X/2" into a good polynomial vector over ``omega``."""
    items = [t.strip() for t in (text or "").split(",")]
    if not all(items):
        raise ParseError(f"Empty polynomial in {text!r}")
    omega = coordinate_omega(len(items)) if omega is None else omega
    polys: List[Poly] = []
    for item in items:
        try:
            expr = sympify(item, locals={"X": X}, rational=True)
            polys.append(Poly(expr, X, domain=QQ))
        except (SympifyError, TypeError, ValueError) as e:
            raise ParseError(f"Invalid polynomial {item!r}: {e}") from e
    try:
        return GoodPolyVector(omega, tuple(polys))
    except InvalidInputError as e:
        raise ParseError(str(e)) from e


def parse_poly_vectors(texts: Sequence[str]) -> List[GoodPolyVector]:
    vectors = [parse_poly_vector(t) for t in texts]
    if len({len(v.omega) for v in vectors}) > 1:
        raise ParseError("Polynomial vectors must all have the same length")
    return vectors


@dataclass(frozen=True)
class LatticeSumColoring:
    """C̃(z) := C(1 + Σ z_i) on ℕ^Ω."""

    base: Coloring

    @property
    def r(self) -> int:
        return self.base.r

    def __call__(self, z: Sequence[int]) -> int:
        return self.base(1 + sum(z))
