from __future__ import annotations

import math
from typing import Iterable, Optional, Union

from hindlab.core.arithmetic.schemas import NonnegRational, PosRational, RatVector, as_vector, pos
from hindlab.core.errors import DimensionError, InvalidInputError
from hindlab.core.families.calculus import is_new, leading_part, newp
from hindlab.core.families.schemas import NFamily, RatioIndex, RatioPair
from .schemas import Dilation, Perturbation, PointX, RatioWeights, Shift

Operator = Union[Shift, Dilation, Perturbation]

IDENTITY_DILATION = Dilation(1, 1)


def _product(indices: Iterable[int], u: RatVector) -> PosRational:
    return math.prod((u[i - 1] for i in indices), start=PosRational(1))


def ratio_vector(u, omega: RatioIndex) -> RatioWeights:
    """ρ_u = (Π_A u_a / Π_B u_b) over Ω."""
    u = as_vector(u)
    if omega.max_index > len(u):
        raise DimensionError(f"Index {omega.max_index} out of range for u of length {len(u)}")
    return RatioWeights(omega, tuple(_product(p.a, u) / _product(p.b, u) for p in omega))


def tilde(q, omega: RatioIndex) -> RatioWeights:
    """q̃ = (q^{|A|-|B|}) over Ω."""
    q = pos(q)
    return RatioWeights(omega, tuple(q ** (len(p.a) - len(p.b)) for p in omega))


def project_point(pt: PointX, support: Iterable[int]) -> PosRational:
    """π_S(u; x) = x · Π_{s∈S} u_s."""
    return pt.x * _product(support, pt.u)


def identity_perturbation(omega: RatioIndex) -> Perturbation:
    return Perturbation(Shift(RatioWeights.zeros(omega)), IDENTITY_DILATION)


def as_perturbation(op: Operator, omega: Optional[RatioIndex] = None) -> Perturbation:
    if isinstance(op, Perturbation):
        return op
    if isinstance(op, Shift):
        return Perturbation(op, IDENTITY_DILATION)
    if omega is None:
        raise InvalidInputError("A bare dilation needs an explicit ratio index")
    return Perturbation(Shift(RatioWeights.zeros(omega)), op)


def pure_dilation(q1, q2, omega: RatioIndex) -> Perturbation:
    return Perturbation(Shift(RatioWeights.zeros(omega)), Dilation(q1, q2))


def apply(op: Operator, pt: PointX) -> PointX:
    if isinstance(op, Dilation):
        return PointX(RatVector(tuple(op.q1 * e for e in pt.u)), op.q2 * pt.x)
    if isinstance(op, Shift):
        rho = ratio_vector(pt.u, op.omega)
        return PointX(pt.u, pt.x + op.weights.dot(rho))
    return apply(op.shift, apply(op.dilation, pt))


def compose_shift(a: Shift, b: Shift) -> Shift:
    """σ_λ ∘ σ_λ' = σ_{λ+λ'}."""
    return Shift(a.weights + b.weights)


def dilation_compose(a: Dilation, b: Dilation) -> Dilation:
    return Dilation(a.q1 * b.q1, a.q2 * b.q2)


def commute_dilation_past_shift(weights: RatioWeights, dilation: Dilation) -> RatioWeights:
    """λ' with R∘σ_λ = σ_λ'∘R, namely λ' = tilde(1/q1) ⊙ (q2·λ)."""
    return tilde(1 / dilation.q1, weights.omega).hadamard(weights.scaled(dilation.q2))


def uncommute_shift_past_dilation(weights: RatioWeights, dilation: Dilation) -> RatioWeights:
    """λ'' with σ_λ∘R = R∘σ_λ'', namely λ'' = tilde(q1) ⊙ (λ/q2)."""
    return tilde(dilation.q1, weights.omega).hadamard(weights.scaled(1 / dilation.q2))


def compose(p1: Perturbation, p2: Perturbation) -> Perturbation:
    """Normal form of p1∘p2 (p2 acts first)."""
    if p1.omega != p2.omega:
        raise InvalidInputError("Cannot compose perturbations over different ratio indices")
    moved = commute_dilation_past_shift(p2.shift.weights, p1.dilation)
    return Perturbation(
        Shift(p1.shift.weights + moved),
        dilation_compose(p1.dilation, p2.dilation),
    )


def compose_all(perturbations: Iterable[Perturbation], omega: RatioIndex) -> Perturbation:
    """p_1∘p_2∘…∘p_m in the given order (the last one acts first)."""
    result = identity_perturbation(omega)
    for p in perturbations:
        result = compose(result, p)
    return result


def family_shift(fam: NFamily, omega: Optional[RatioIndex] = None) -> Shift:
    """σ_𝓘: weight 1 on each (A_i, S) with S = f(𝓘)∖{n}."""
    if not is_new(fam):
        raise InvalidInputError(f"Family {fam} is not new; its shift is undefined")
    if omega is None:
        omega = newp([fam]) if len(fam.parts) > 1 else RatioIndex()
    lead = leading_part(fam)
    s = lead - {fam.ground}
    weights = {}
    for a in fam.parts:
        if a == lead:
            continue
        pair = RatioPair(a, s)
        if pair not in omega:
            raise InvalidInputError(f"Pair {pair} of {fam} is missing from the ratio index")
        weights[pair] = NonnegRational(1)
    return Shift(RatioWeights.from_mapping(omega, weights))
