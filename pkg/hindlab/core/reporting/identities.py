"""
Seeded identity suites.

Each suite draws random exact instances from one ``random.Random(seed)``
and checks an algebraic identity with ``==``; there is no tolerance.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

from hindlab.core.arithmetic.operations import scale
from hindlab.core.arithmetic.schemas import NonnegRational, PosRational, RatVector
from hindlab.core.errors import InvalidInputError
from hindlab.core.families.calculus import compose as compose_families
from hindlab.core.families.calculus import leading_term, newp, part_product, phi
from hindlab.core.families.enumeration import enumerate_families, enumerate_new_multi
from hindlab.core.families.schemas import NFamily, RatioIndex, index_set
from hindlab.core.perturbations.algebra import (
    apply,
    commute_dilation_past_shift,
    compose,
    family_shift,
    ratio_vector,
    tilde,
    uncommute_shift_past_dilation,
)
from hindlab.core.perturbations.schemas import Dilation, Perturbation, PointX, RatioWeights, Shift
from hindlab.core.shifting.engine import verify_homomorph_identity

logger = logging.getLogger(__name__)

MAX_NUMERATOR = 40


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    passed: int = 0
    first_failure: Optional[Dict[str, Any]] = None

    @property
    def ok(self) -> bool:
        return self.passed == self.cases

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "cases": self.cases,
            "passed": self.passed,
            "pass": self.ok,
            "first_failure": self.first_failure,
        }


# --- random instances ---

def rand_rational(rng: random.Random, top: int = MAX_NUMERATOR) -> PosRational:
    return PosRational(rng.randint(1, top), rng.randint(1, top))


def rand_weight(rng: random.Random, top: int = MAX_NUMERATOR) -> NonnegRational:
    # un quart des poids est nul
    if rng.random() < 0.25:
        return NonnegRational(0)
    return NonnegRational(rng.randint(1, top), rng.randint(1, top))


def rand_vector(rng: random.Random, n: int) -> RatVector:
    return RatVector(tuple(rand_rational(rng) for _ in range(n)))


def rand_omega(rng: random.Random, n: int) -> RatioIndex:
    multi = enumerate_new_multi(n)
    return newp(rng.sample(multi, rng.randint(1, min(3, len(multi)))))


def rand_weights(rng: random.Random, omega: RatioIndex) -> RatioWeights:
    return RatioWeights(omega, tuple(rand_weight(rng) for _ in omega))


def rand_dilation(rng: random.Random) -> Dilation:
    return Dilation(rand_rational(rng, 6), rand_rational(rng, 6))


def rand_perturbation(rng: random.Random, omega: RatioIndex) -> Perturbation:
    return Perturbation(Shift(rand_weights(rng, omega)), rand_dilation(rng))


def rand_point(rng: random.Random, n: int) -> PointX:
    return PointX(rand_vector(rng, n - 1), rand_rational(rng))


# --- identities ---

def semiring_case(rng: random.Random) -> Dict[str, Any]:
    a, b, c = (rand_weight(rng) for _ in range(3))
    ok = (
        (a + b) + c == a + (b + c)
        and (a * b) * c == a * (b * c)
        and a + b == b + a
        and a * b == b * a
        and a * (b + c) == a * b + a * c
        and a + 0 == a
        and a * 1 == a
    )
    return {"ok": ok, "a": a, "b": b, "c": c}


def basic_identity_case(rng: random.Random) -> Dict[str, Any]:
    """ρ_{q·u} = q̃ ⊙ ρ_u."""
    n = rng.randint(2, 4)
    omega = rand_omega(rng, n)
    u, q = rand_vector(rng, n - 1), rand_rational(rng, 8)
    ok = ratio_vector(scale(q, u), omega) == tilde(q, omega).hadamard(ratio_vector(u, omega))
    return {"ok": ok, "u": u, "q": q, "omega": omega}


def commutator_case(rng: random.Random) -> Dict[str, Any]:
    """R∘σ_λ = σ_{λ′}∘R and σ_λ∘R = R∘σ_{λ″}."""
    n = rng.randint(2, 4)
    omega = rand_omega(rng, n)
    lam, R, pt = rand_weights(rng, omega), rand_dilation(rng), rand_point(rng, n)
    sigma = Shift(lam)
    forward = apply(R, apply(sigma, pt)) == apply(Shift(commute_dilation_past_shift(lam, R)), apply(R, pt))
    backward = apply(sigma, apply(R, pt)) == apply(R, apply(Shift(uncommute_shift_past_dilation(lam, R)), pt))
    return {"ok": forward and backward, "lambda": lam.values, "R": [R.q1, R.q2], "point": str(pt)}


def closed_case(rng: random.Random) -> Dict[str, Any]:
    """The normal form of p1∘p2 acts as p1 after p2."""
    n = rng.randint(2, 4)
    omega = rand_omega(rng, n)
    p1, p2, pt = rand_perturbation(rng, omega), rand_perturbation(rng, omega), rand_point(rng, n)
    ok = apply(compose(p1, p2), pt) == apply(p1, apply(p2, pt))
    return {"ok": ok, "point": str(pt)}


def family_shift_case(rng: random.Random) -> Dict[str, Any]:
    """φ_𝓘((u; x)) = Π_{f(𝓘)} of σ_𝓘((u; x))."""
    n = rng.randint(2, 4)
    fam = rng.choice(enumerate_new_multi(n))
    pt = rand_point(rng, n)
    shifted = apply(family_shift(fam), pt)
    ok = phi(fam, pt.as_vector()) == leading_term(fam, shifted.as_vector())
    return {"ok": ok, "family": fam, "point": str(pt)}


def _rand_blocks(rng: random.Random, k: int, n: int) -> List[frozenset]:
    indices = list(range(1, n + 1))
    rng.shuffle(indices)
    cuts = sorted(rng.sample(range(1, n), k - 1)) if k > 1 else []
    bounds = [0] + cuts + [n]
    return [index_set(indices[bounds[j]:bounds[j + 1]]) for j in range(k)]


def composition_law_case(rng: random.Random) -> Dict[str, Any]:
    """φ(𝓙∘I⃗, v⃗) = φ(𝓙, (Π_{I_j} v)_j)."""
    k = rng.randint(1, 3)
    n = rng.randint(k, 5)
    outer = rng.choice(enumerate_families(k))
    blocks = _rand_blocks(rng, k, n)
    v = rand_vector(rng, n)
    x = RatVector(tuple(part_product(b, v) for b in blocks))
    ok = phi(compose_families(outer, blocks, ground=n), v) == phi(outer, x)
    return {"ok": ok, "outer": outer, "blocks": [sorted(b) for b in blocks], "v": v}


def homomorph_case(rng: random.Random) -> Dict[str, Any]:
    """Π(d·u_s)·(x′ + ξ·ρ_{d·u}) = x·Π u_s + φ(δ) + φ(p_ξ(d))."""
    n = rng.randint(2, 4)
    S = index_set(i for i in range(1, n) if rng.random() < 0.5)
    omega = rand_omega(rng, n)
    omega = omega.restricted(p for p in omega if len(p.a) - len(p.b) + len(S) >= 1)
    u, x, d = rand_vector(rng, n - 1), rand_rational(rng), rng.randint(1, 6)
    delta = RatioWeights(omega, tuple(rng.randint(0, 5) for _ in omega))
    xi = rand_weights(rng, omega)
    ok = verify_homomorph_identity(u, x, d, delta, xi, S, omega)
    return {"ok": ok, "S": sorted(S), "u": u, "x": x, "d": d}


SUITES: Dict[str, Callable[[random.Random], Dict[str, Any]]] = {
    "semiring": semiring_case,
    "basic-identity": basic_identity_case,
    "commutator": commutator_case,
    "closed": closed_case,
    "family-shift": family_shift_case,
    "composition-law": composition_law_case,
    "homomorph": homomorph_case,
}


def run_suite(name: str, seed: int, cases: int) -> SuiteResult:
    if name not in SUITES:
        raise InvalidInputError(f"Unknown identity suite {name!r}, expected one of {sorted(SUITES)}")
    rng = random.Random(f"{seed}:{name}")
    case = SUITES[name]
    result = SuiteResult(name)
    for _ in range(cases):
        outcome = case(rng)
        result.cases += 1
        if outcome.pop("ok"):
            result.passed += 1
        elif result.first_failure is None:
            result.first_failure = outcome
            logger.error("Identity %s failed on %s", name, outcome)
    logger.debug("Suite %s: %d/%d", name, result.passed, result.cases)
    return result


def verify_identities(seed: int = 0, cases: int = 1000,
                      suites: Optional[Sequence[str]] = None) -> Dict[str, Any]:
    """Run the selected suites (all by default); each gets its own seeded stream."""
    if cases < 1:
        raise InvalidInputError(f"cases must be >= 1, got {cases}")
    names = list(suites) if suites else list(SUITES)
    results = [run_suite(name, seed, cases) for name in names]
    return {
        "command": "verify-identities",
        "params": {"seed": seed, "cases": cases},
        "found": all(r.ok for r in results),
        "suites": [r.to_dict() for r in results],
        "checks": [{"name": r.name, "pass": r.ok} for r in results],
    }
