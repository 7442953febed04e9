from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Tuple, Union

from hindlab.core.errors import InvalidInputError

RationalLike = Union[int, Fraction, str]


def _typed(value):
    """Re-tag an arithmetic result: positive -> PosRational, zero -> NonnegRational."""
    if not isinstance(value, Fraction):
        return value
    if type(value) in (PosRational, NonnegRational):
        return value
    if value > 0:
        cls = PosRational
    elif value == 0:
        cls = NonnegRational
    else:
        return value
    # Fraction already reduced: copy the slots without a second gcd.
    obj = object.__new__(cls)
    obj._numerator = value.numerator
    obj._denominator = value.denominator
    return obj


class NonnegRational(Fraction):
    """Exact nonnegative rational in canonical reduced form (0 is 0/1)."""

    __slots__ = ()

    def __new__(cls, numerator: RationalLike = 0, denominator=None):
        self = super().__new__(cls, numerator, denominator)
        if self < 0:
            raise InvalidInputError(f"{cls.__name__} must be nonnegative, got {Fraction(self)}")
        return self

    def __add__(self, other):
        return _typed(Fraction.__add__(self, other))

    def __radd__(self, other):
        return _typed(Fraction.__radd__(self, other))

    def __mul__(self, other):
        return _typed(Fraction.__mul__(self, other))

    def __rmul__(self, other):
        return _typed(Fraction.__rmul__(self, other))

    def __truediv__(self, other):
        return _typed(Fraction.__truediv__(self, other))

    def __rtruediv__(self, other):
        return _typed(Fraction.__rtruediv__(self, other))

    def __pow__(self, other):
        return _typed(Fraction.__pow__(self, other))

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


class PosRational(NonnegRational):
    """Exact positive rational; zero is unrepresentable."""

    __slots__ = ()

    def __new__(cls, numerator: RationalLike = 1, denominator=None):
        self = Fraction.__new__(cls, numerator, denominator)
        if self <= 0:
            raise InvalidInputError(f"PosRational must be positive, got {Fraction(self)}")
        return self

    @property
    def is_natural(self) -> bool:
        return self.denominator == 1


def pos(value: RationalLike) -> PosRational:
    """Coerce to PosRational (no-op on PosRational)."""
    if type(value) is PosRational:
        return value
    return PosRational(value)


def nonneg(value: RationalLike) -> NonnegRational:
    if isinstance(value, NonnegRational):
        return value
    frac = Fraction(value)
    if frac < 0:
        raise InvalidInputError(f"NonnegRational must be nonnegative, got {frac}")
    return _typed(frac)


@dataclass(frozen=True)
class RatVector:
    """Ordered vector of positive rationals (u or v)."""

    entries: Tuple[PosRational, ...]

    def __post_init__(self):
        entries = tuple(pos(e) for e in self.entries)
        if not entries:
            raise InvalidInputError("RatVector must have length >= 1")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, *values: RationalLike) -> "RatVector":
        return cls(tuple(values))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[PosRational]:
        return iter(self.entries)

    def __getitem__(self, index):
        return self.entries[index]

    def coordinate(self, i: int) -> PosRational:
        """1-based access, as indices of families are."""
        return self.entries[i - 1]

    def extended(self, value: RationalLike) -> "RatVector":
        return RatVector(self.entries + (pos(value),))

    def prefix(self, length: int) -> "RatVector":
        return RatVector(self.entries[:length])

    def __str__(self) -> str:
        return "(" + ", ".join(str(e) for e in self.entries) + ")"


def as_vector(values: Iterable[RationalLike]) -> RatVector:
    if isinstance(values, RatVector):
        return values
    return RatVector(tuple(values))
