from __future__ import annotations

import itertools
import logging
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple

from hindlab import config
from hindlab.core.errors import BudgetExceededError, InvalidInputError
from .calculus import is_extreme, is_lower, is_new
from .schemas import NFamily, family_sort_key

logger = logging.getLogger(__name__)


def _set_partitions(elements: Sequence[int]) -> Iterator[List[List[int]]]:
    """Set partitions of a list: the first element opens a block or joins one."""
    if not elements:
        yield []
        return
    first, rest = elements[0], elements[1:]
    for partition in _set_partitions(rest):
        yield [[first]] + partition
        for i in range(len(partition)):
            yield partition[:i] + [[first] + partition[i]] + partition[i + 1:]


def _check_guard(n: int, max_ground: Optional[int]) -> None:
    limit = config.MAX_GROUND if max_ground is None else max_ground
    if n < 1:
        raise InvalidInputError(f"Ground must be >= 1, got {n}")
    if n > limit:
        raise BudgetExceededError(
            f"Enumeration of {n}-families exceeds the guard n <= {limit}",
            stats={"ground": n, "guard": limit},
        )


@lru_cache(maxsize=None)
def _all_families(n: int) -> Tuple[NFamily, ...]:
    families = []
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(1, n + 1), size):
            for partition in _set_partitions(list(subset)):
                families.append(NFamily(n, tuple(frozenset(b) for b in partition)))
    families.sort(key=family_sort_key)
    logger.debug("Enumerated %d families on [%d]", len(families), n)
    return tuple(families)


def enumerate_families(n: int, max_ground: Optional[int] = None) -> List[NFamily]:
    """Every n-family, duplicate-free, in canonical order."""
    _check_guard(n, max_ground)
    return list(_all_families(n))


def enumerate_extreme(k: int, max_ground: Optional[int] = None) -> List[NFamily]:
    return [f for f in enumerate_families(k, max_ground) if is_extreme(f)]


def enumerate_lower(n: int, max_ground: Optional[int] = None) -> List[NFamily]:
    return [f for f in enumerate_families(n, max_ground) if is_lower(f)]


def enumerate_all_new(n: int, max_ground: Optional[int] = None) -> List[NFamily]:
    return [f for f in enumerate_families(n, max_ground) if is_new(f)]


def old_families(n: int, max_ground: Optional[int] = None) -> List[NFamily]:
    return [f for f in enumerate_families(n, max_ground) if not is_new(f)]


def enumerate_new_multi(n: int, max_ground: Optional[int] = None) -> List[NFamily]:
    """𝔛*: new n-families with more than one part."""
    return [f for f in enumerate_all_new(n, max_ground) if len(f.parts) > 1]


def extreme_pattern_families(k: int, max_ground: Optional[int] = None) -> List[Tuple[str, NFamily]]:
    """Descriptors of the sum/product pattern on k variables.

    Sums over I are the all-singleton families, products over J the one-part
    families; singletons appear once under both readings.
    """
    pattern = []
    for fam in enumerate_extreme(k, max_ground):
        kind = "prod" if len(fam.parts) == 1 and len(fam.parts[0]) > 1 else "sum"
        pattern.append((f"{kind}:{fam}", fam))
    return pattern
