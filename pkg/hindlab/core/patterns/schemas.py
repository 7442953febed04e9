from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Tuple

from sympy import Poly, QQ, Rational, Symbol

from hindlab import config
from hindlab.core.errors import BudgetExceededError, InvalidInputError, VerificationError
from hindlab.core.families.schemas import RatioIndex, RatioPair

logger = logging.getLogger(__name__)

X = Symbol("X")


@dataclass(frozen=True)
class SearchBudget:
    """Bounds of a finite search: height of rationals, candidates examined, wall time."""

    height_bound: int = field(default_factory=lambda: config.DEFAULT_HEIGHT)
    max_candidates: int = field(default_factory=lambda: config.BUDGET_CANDIDATES)
    max_seconds: float = field(default_factory=lambda: config.BUDGET_SECONDS)

    def __post_init__(self):
        if self.height_bound < 1 or self.max_candidates < 1 or self.max_seconds <= 0:
            raise InvalidInputError(
                f"Budget bounds must be positive, got height={self.height_bound}, "
                f"candidates={self.max_candidates}, seconds={self.max_seconds}"
            )

    def clock(self) -> "BudgetClock":
        return BudgetClock(self)


class BudgetClock:
    """Counts candidates against a budget; raises once a bound is crossed."""

    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.candidates = 0
        self._start = time.perf_counter()

    @property
    def elapsed_ms(self) -> int:
        return int((time.perf_counter() - self._start) * 1000)

    def tick(self, count: int = 1, partial: Optional[Dict[str, Any]] = None) -> None:
        self.candidates += count
        if self.candidates > self.budget.max_candidates:
            logger.warning("Candidate budget of %d exhausted", self.budget.max_candidates)
            raise BudgetExceededError(
                f"Candidate budget of {self.budget.max_candidates} exhausted",
                partial=partial, stats=self.stats(),
            )
        # l'horloge n'est consultée que toutes les 256 évaluations
        if self.candidates & 0xFF == 0 and self.elapsed_ms > self.budget.max_seconds * 1000:
            logger.warning("Time budget of %ss exhausted", self.budget.max_seconds)
            raise BudgetExceededError(
                f"Time budget of {self.budget.max_seconds}s exhausted",
                partial=partial, stats=self.stats(),
            )

    def stats(self) -> Dict[str, int]:
        return {"candidates": self.candidates, "elapsed_ms": self.elapsed_ms}


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "pass": self.passed}


def require_verified(checks: List[Check], what: str, partial: Optional[Dict[str, Any]] = None,
                     stats: Optional[Dict[str, Any]] = None) -> None:
    """Raise VerificationError naming every failed check; a result is only returned verified."""
    failed = [c.name for c in checks if not c.passed]
    if failed:
        logger.error("%s failed re-verification: %s", what, failed)
        raise VerificationError(f"{what} failed re-verification: {failed}", failed, partial, stats)


@dataclass
class WitnessReport:
    """Outcome of a search: the witness payload and the equalities re-verified on it."""

    command: str
    found: bool
    witness: Dict[str, Any] = field(default_factory=dict)
    checks: List[Check] = field(default_factory=list)
    stats: Dict[str, Any] = field(default_factory=dict)
    params: Dict[str, Any] = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str, passed: bool) -> bool:
        self.checks.append(Check(name, bool(passed)))
        return bool(passed)

    def require_verified(self) -> "WitnessReport":
        require_verified(self.checks, self.command, partial=self.witness, stats=self.stats)
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "params": self.params,
            "found": self.found,
            "witness": self.witness,
            "checks": [c.to_dict() for c in self.checks],
            "stats": self.stats,
        }


def to_fraction(value) -> Fraction:
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


def make_univariate(terms: Mapping[int, Any]) -> Poly:
    """Poly in X over QQ from {exponent: coefficient}."""
    expr = sum(
        (Rational(Fraction(c).numerator, Fraction(c).denominator) * X ** int(e) for e, c in terms.items()),
        Rational(0),
    )
    return Poly(expr, X, domain=QQ)


def is_good(poly: Poly) -> bool:
    """Zero constant term."""
    return poly.coeff_monomial(1) == 0


@dataclass(frozen=True)
class GoodPolyVector:
    """Vector (p_{(A,B)}(X)) over Ω of polynomials with zero constant term."""

    omega: RatioIndex
    polys: Tuple[Poly, ...]

    def __post_init__(self):
        polys = tuple(self.polys)
        if len(polys) != len(self.omega):
            raise InvalidInputError(f"{len(polys)} polynomials given for an index of size {len(self.omega)}")
        for pair, poly in zip(self.omega, polys):
            if not is_good(poly):
                raise InvalidInputError(f"Polynomial {poly.as_expr()} at {pair} has a nonzero constant term")
            if any(to_fraction(c) < 0 for c in poly.coeffs()):
                raise InvalidInputError(f"Polynomial {poly.as_expr()} at {pair} has a negative coefficient")
        object.__setattr__(self, "polys", polys)

    @classmethod
    def from_terms(cls, omega: RatioIndex, terms: Mapping[RatioPair, Mapping[int, Any]]) -> "GoodPolyVector":
        by_pair = {RatioPair(frozenset(p[0]), frozenset(p[1])): t for p, t in terms.items()}
        unknown = set(by_pair) - set(omega)
        if unknown:
            raise InvalidInputError(f"Pairs {sorted(map(str, unknown))} are not in the ratio index")
        return cls(omega, tuple(make_univariate(by_pair.get(p, {})) for p in omega))

    def __iter__(self):
        return iter(self.polys)

    def is_zero(self) -> bool:
        return all(p.is_zero for p in self.polys)

    def evaluate(self, d) -> Tuple[Fraction, ...]:
        return tuple(to_fraction(p.eval(Rational(Fraction(d).numerator, Fraction(d).denominator))) for p in self.polys)

    def denominator_lcm(self) -> int:
        return math.lcm(1, *(to_fraction(c).denominator for p in self.polys for c in p.coeffs()))

    def substituted(self, factor: int) -> "GoodPolyVector":
        """p(factor·X); goodness survives the substitution."""
        return GoodPolyVector(self.omega, tuple(Poly(p.as_expr().subs(X, factor * X), X, domain=QQ) for p in self.polys))

    def terms(self) -> Dict[str, Dict[int, Fraction]]:
        return {
            str(pair): {int(m[0]): to_fraction(c) for m, c in poly.terms() if c != 0}
            for pair, poly in zip(self.omega, self.polys)
        }

    def __str__(self) -> str:
        return "(" + ", ".join(str(p.as_expr()) for p in self.polys) + ")"
