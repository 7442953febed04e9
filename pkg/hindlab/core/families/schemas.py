from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, NamedTuple, Tuple

from hindlab.core.errors import InvalidInputError

IndexSet = FrozenSet[int]


def index_set(elements: Iterable[int]) -> IndexSet:
    return frozenset(int(e) for e in elements)


def sorted_tuple(part: Iterable[int]) -> Tuple[int, ...]:
    return tuple(sorted(part))


@dataclass(frozen=True)
class NFamily:
    """A set of pairwise-disjoint nonempty subsets of [ground].

    Parts are stored sorted by their maximum element, so the last part is
    always the leading part f(𝓘).
    """

    ground: int
    parts: Tuple[IndexSet, ...]

    def __post_init__(self):
        if int(self.ground) < 1:
            raise InvalidInputError(f"Family ground must be >= 1, got {self.ground}")
        parts = [index_set(p) for p in self.parts]
        if not parts:
            raise InvalidInputError("A family needs at least one part")
        seen: set = set()
        for p in parts:
            if not p:
                raise InvalidInputError("Family parts must be nonempty")
            if seen & p:
                raise InvalidInputError(f"Family parts overlap on {sorted(seen & p)}")
            if min(p) < 1 or max(p) > self.ground:
                raise InvalidInputError(f"Part {sorted(p)} is outside [1..{self.ground}]")
            seen |= p
        object.__setattr__(self, "ground", int(self.ground))
        object.__setattr__(self, "parts", tuple(sorted(parts, key=max)))

    @classmethod
    def of(cls, ground: int, *parts: Iterable[int]) -> "NFamily":
        return cls(ground, tuple(index_set(p) for p in parts))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[IndexSet]:
        return iter(self.parts)

    @property
    def support(self) -> IndexSet:
        return frozenset().union(*self.parts)

    def __str__(self) -> str:
        return "|".join(",".join(str(i) for i in sorted_tuple(p)) for p in self.parts)


def family_sort_key(fam: NFamily):
    """Canonical order: fewer parts first, then parts compared by (max, size, elements)."""
    return (len(fam.parts), tuple((max(p), len(p), sorted_tuple(p)) for p in fam.parts))


class RatioPair(NamedTuple):
    """Index pair (A, B) of the ratio Π_A u_a / Π_B u_b; B may be empty."""

    a: IndexSet
    b: IndexSet

    def key(self):
        return (sorted_tuple(self.a), sorted_tuple(self.b))

    def __str__(self) -> str:
        return f"({','.join(map(str, sorted_tuple(self.a)))}|{','.join(map(str, sorted_tuple(self.b)))})"


def ratio_pair(a: Iterable[int], b: Iterable[int] = ()) -> RatioPair:
    return RatioPair(index_set(a), index_set(b))


@dataclass(frozen=True)
class RatioIndex:
    """Canonically ordered set Ω of disjoint pairs (A, B)."""

    pairs: Tuple[RatioPair, ...] = ()

    def __post_init__(self):
        unique = {}
        for pair in self.pairs:
            pair = RatioPair(index_set(pair[0]), index_set(pair[1]))
            if pair.a & pair.b:
                raise InvalidInputError(f"Ratio pair {pair} is not disjoint")
            if any(i < 1 for i in pair.a | pair.b):
                raise InvalidInputError(f"Ratio pair {pair} has indices below 1")
            unique[pair] = None
        object.__setattr__(self, "pairs", tuple(sorted(unique, key=RatioPair.key)))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[RatioPair]:
        return iter(self.pairs)

    def __contains__(self, pair) -> bool:
        return RatioPair(index_set(pair[0]), index_set(pair[1])) in self.pairs

    def position(self, pair) -> int:
        return self.pairs.index(RatioPair(index_set(pair[0]), index_set(pair[1])))

    @property
    def max_index(self) -> int:
        return max((max(p.a | p.b) for p in self.pairs if p.a | p.b), default=0)

    def union(self, other: "RatioIndex") -> "RatioIndex":
        return RatioIndex(self.pairs + other.pairs)

    def restricted(self, pairs: Iterable[RatioPair]) -> "RatioIndex":
        keep = set(pairs)
        return RatioIndex(tuple(p for p in self.pairs if p in keep))

    def is_subset(self, other: "RatioIndex") -> bool:
        return set(self.pairs) <= set(other.pairs)
