"""
Shifting through polynomial van der Waerden.

For a task (S, Ω, Ξ) and a point (u; x), every ξ ∈ Ξ gives the good
polynomial vector p_ξ(X) = (ξ_{(A,B)} X^{|A|−|B|+|S|}). The coloring C is
pulled back to the lattice ℕ^Ω along

    z ↦ x·Π_{s∈S} u_s + φ(z),   φ(e_{(A,B)}) = Π_{s∈S} u_s · ρ_{(A,B)}(u),

and a lattice witness (z, d) becomes δ = z together with the dilation d.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

from hindlab.core.arithmetic.schemas import NonnegRational, PosRational, RatVector, as_vector, pos
from hindlab.core.arithmetic.operations import scale
from hindlab.core.colorings.schemas import Coloring
from hindlab.core.errors import InvalidInputError
from hindlab.core.families.schemas import IndexSet, RatioIndex, index_set
from hindlab.core.patterns.polynomial import pvdw_witness
from hindlab.core.patterns.schemas import Check, GoodPolyVector, SearchBudget, require_verified
from hindlab.core.perturbations.algebra import ratio_vector
from hindlab.core.perturbations.schemas import RatioWeights
from .schemas import ShiftResult, ShiftTask

logger = logging.getLogger(__name__)


def make_poly(xi: RatioWeights, S: Iterable[int]) -> GoodPolyVector:
    """p_ξ(X) = (ξ_{(A,B)} X^{|A|−|B|+|S|}) over Ω."""
    size = len(index_set(S))
    terms = {}
    for pair, weight in xi.items():
        if weight == 0:
            continue
        exponent = len(pair.a) - len(pair.b) + size
        if exponent < 1:
            raise InvalidInputError(f"Pair {pair} gives exponent {exponent} < 1 with |S| = {size}")
        terms[pair] = {exponent: weight}
    return GoodPolyVector.from_terms(xi.omega, terms)


@dataclass(frozen=True)
class LatticeHomomorphism:
    """Additive map ℕ^Ω → ℚ_{≥0} given by its values on the unit vectors."""

    omega: RatioIndex
    generators: Tuple[PosRational, ...]

    def __call__(self, z: Sequence) -> NonnegRational:
        return sum((g * c for g, c in zip(self.generators, z)), start=NonnegRational(0))


def _support_product(u: RatVector, S: IndexSet) -> PosRational:
    return math.prod((u[s - 1] for s in S), start=PosRational(1))


def phi_hom(u, S: Iterable[int], omega: RatioIndex) -> LatticeHomomorphism:
    u = as_vector(u)
    S = index_set(S)
    base = _support_product(u, S)
    rho = ratio_vector(u, omega)
    return LatticeHomomorphism(omega, tuple(base * value for value in rho))


@dataclass(frozen=True)
class PullbackColoring:
    """C̃(z) = C(offset + φ(z)) on lattice points."""

    base: Coloring
    offset: PosRational
    hom: LatticeHomomorphism

    def __call__(self, z: Sequence[int]) -> int:
        return self.base(self.offset + self.hom(z))


def pullback(C: Coloring, u, x, S: Iterable[int], omega: RatioIndex) -> PullbackColoring:
    u = as_vector(u)
    S = index_set(S)
    return PullbackColoring(C, pos(x) * _support_product(u, S), phi_hom(u, S, omega))


def verify_homomorph_identity(u, x, d: int, delta: RatioWeights, xi: RatioWeights,
                              S: Iterable[int], omega: RatioIndex) -> bool:
    """Π_{s∈S}(d·u_s)·((x + δ·ρ_u)/d^{|S|} + ξ·ρ_{d·u}) = x·Π u_s + φ(δ) + φ(p_ξ(d))."""
    u, x, S = as_vector(u), pos(x), index_set(S)
    rho = ratio_vector(u, omega)
    u_d = scale(d, u)
    x_prime = (x + delta.dot(rho)) / PosRational(d) ** len(S)
    lhs = _support_product(u_d, S) * (x_prime + xi.dot(ratio_vector(u_d, omega)))

    hom = phi_hom(u, S, omega)
    p_of_d = make_poly(xi, S).evaluate(d)
    rhs = x * _support_product(u, S) + hom(delta.values) + hom(p_of_d)
    return lhs == rhs


def postcondition_holds(C: Coloring, u_prime: RatVector, x_prime, xi: RatioWeights, S: IndexSet) -> bool:
    """C(Π_{s∈S} u′_s·(x′ + ξ·ρ_{u′})) = C(x′·Π_{s∈S} u′_s)."""
    base = _support_product(u_prime, S)
    shifted = base * (x_prime + xi.dot(ratio_vector(u_prime, xi.omega)))
    plain = base * x_prime
    if not (C.defined(shifted) and C.defined(plain)):
        return False
    return C(shifted) == C(plain)


def general_term_shift(task: ShiftTask, C: Coloring, u, x,
                       budget: Optional[SearchBudget] = None) -> ShiftResult:
    """(d, δ) with C(Π u′_s (x′ + ξ·ρ_{u′})) = C(x′ Π u′_s) for every ξ ∈ Ξ."""
    u, x = as_vector(u), pos(x)
    budget = budget or SearchBudget()
    polys = [make_poly(xi, task.S) for xi in task.xi] or [GoodPolyVector.from_terms(task.omega, {})]
    lattice = pullback(C, u, x, task.S, task.omega)

    witness = pvdw_witness(polys, lattice, budget)
    d = witness.witness["d"]
    delta = RatioWeights(task.omega, tuple(witness.witness["x_tilde"]))
    rho = ratio_vector(u, task.omega)
    x_prime = (x + delta.dot(rho)) / PosRational(d) ** len(task.S)
    u_prime = scale(d, u)

    result = ShiftResult(d, delta, x_prime, u_prime)
    result.transcript = {
        "window": witness.witness["window"],
        "scale": witness.witness["scale"],
        **witness.stats,
    }
    for i, xi in enumerate(task.xi, start=1):
        result.checks.append(Check(f"postcondition xi_{i}", postcondition_holds(C, u_prime, x_prime, xi, task.S)))
        result.checks.append(Check(
            f"homomorph identity xi_{i}",
            verify_homomorph_identity(u, x, d, delta, xi, task.S, task.omega),
        ))
    logger.debug("Shift found: d=%d delta=%s x'=%s", d, delta.as_dict(), x_prime)
    require_verified(result.checks, "shift", partial=result.transcript)
    return result


def single_shift(C: Coloring, u, x, omega: RatioIndex, xi: Sequence[RatioWeights],
                 budget: Optional[SearchBudget] = None) -> ShiftResult:
    """The S = ∅ case: x′ = x + δ·ρ_u, u′ = d·u."""
    task = ShiftTask(frozenset(), omega, tuple(xi), C.r)
    return general_term_shift(task, C, u, x, budget)
