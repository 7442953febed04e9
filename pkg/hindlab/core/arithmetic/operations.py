from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple, Union

from hindlab.core.errors import InvalidInputError, ParseError
from .schemas import NonnegRational, PosRational, RatVector, as_vector, nonneg, pos

Number = Union[int, Fraction]

_LITERAL = re.compile(r"^\s*(\d+)\s*(?:/\s*(\d+)\s*)?$")


def add(a: Number, b: Number) -> NonnegRational:
    """Exact sum; positive if either operand is positive."""
    return nonneg(a) + nonneg(b)


def mul(a: Number, b: Number) -> NonnegRational:
    return nonneg(a) * nonneg(b)


def div(a: Number, b: Number) -> PosRational:
    return pos(a) / pos(b)


def scale(q: Number, v) -> RatVector:
    """Entrywise product q·v."""
    q = pos(q)
    return RatVector(tuple(q * e for e in as_vector(v)))


def _two_adic(n: int) -> int:
    return (n & -n).bit_length() - 1


def val2(q: Number) -> int:
    """2-adic valuation: exponent of 2 in the numerator minus that of the denominator."""
    if isinstance(q, int):
        if q <= 0:
            raise InvalidInputError(f"val2 is defined on positive values only, got {q}")
        return _two_adic(q)
    q = pos(q)
    return _two_adic(q.numerator) - _two_adic(q.denominator)


def is_natural(q: Number) -> bool:
    return Fraction(q).denominator == 1 and q > 0


def rational_height(q: Number) -> int:
    """Height max(numerator, denominator) of the reduced fraction."""
    q = pos(q)
    return max(q.numerator, q.denominator)


def parse_rational(text: str) -> PosRational:
    """Parse a literal "a/b" or "a" with a, b positive decimal integers."""
    match = _LITERAL.match(text or "")
    if match is None:
        raise ParseError(f"Invalid rational literal: {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if numerator == 0 or denominator == 0:
        raise ParseError(f"Rational literal must be positive: {text!r}")
    return PosRational(numerator, denominator)


def format_rational(q: Number) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational_list(text: str) -> List[PosRational]:
    """Parse a comma separated list such as "1,2,1/2"."""
    items = [t for t in (text or "").split(",") if t.strip()]
    if not items:
        raise ParseError(f"Empty rational list: {text!r}")
    return [parse_rational(t) for t in items]


@lru_cache(maxsize=None)
def rationals_of_height(h: int) -> Tuple[PosRational, ...]:
    """All reduced a/b with max(a, b) = h, sorted by value."""
    if h < 1:
        return ()
    values = {PosRational(h, b) for b in range(1, h + 1) if math.gcd(h, b) == 1}
    values |= {PosRational(a, h) for a in range(1, h) if math.gcd(a, h) == 1}
    return tuple(sorted(values))


def rationals_up_to_height(h: int) -> Tuple[PosRational, ...]:
    values = [q for level in range(1, h + 1) for q in rationals_of_height(level)]
    return tuple(sorted(values))
