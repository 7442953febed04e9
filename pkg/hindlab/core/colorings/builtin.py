"""
Built-in colorings of ℚ₊ and the JSON spec codec.

Every coloring is a frozen dataclass, so it hashes, compares and pickles
(the parallel searches ship colorings to worker processes).
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
from dataclasses import dataclass
from typing import Any, Callable, Dict, Mapping, Optional, Tuple, Union

from hindlab.core.arithmetic.operations import val2
from hindlab.core.arithmetic.schemas import pos
from hindlab.core.errors import InvalidInputError, ParseError
from .schemas import Coloring

logger = logging.getLogger(__name__)


def _check_modulus(m: int) -> int:
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise InvalidInputError(f"Modulus must be a positive integer, got {m!r}")
    return m


@dataclass(frozen=True)
class Val2Parity(Coloring):
    """Class of val2(q) mod 2; the even class is color 1. Separates q from 2q."""

    @property
    def r(self) -> int:
        return 2

    def color(self, q) -> int:
        return 1 + val2(q) % 2

    def descriptor(self) -> Dict[str, Any]:
        return {"kind": "val2_parity"}


@dataclass(frozen=True)
class Val2Mod(Coloring):
    m: int

    def __post_init__(self):
        _check_modulus(self.m)

    @property
    def r(self) -> int:
        return self.m

    def color(self, q) -> int:
        return 1 + val2(q) % self.m

    def descriptor(self) -> Dict[str, Any]:
        return {"kind": "val2_mod", "m": self.m}


@dataclass(frozen=True)
class NumeratorMod(Coloring):
    """1 + (numerator mod m); on naturals with m=2 this is the parity coloring."""

    m: int

    def __post_init__(self):
        _check_modulus(self.m)

    @property
    def r(self) -> int:
        return self.m

    def color(self, q) -> int:
        return 1 + pos(q).numerator % self.m

    def descriptor(self) -> Dict[str, Any]:
        return {"kind": "numerator_mod", "m": self.m}


@dataclass(frozen=True)
class DenominatorMod(Coloring):
    m: int

    def __post_init__(self):
        _check_modulus(self.m)

    @property
    def r(self) -> int:
        return self.m

    def color(self, q) -> int:
        return 1 + pos(q).denominator % self.m

    def descriptor(self) -> Dict[str, Any]:
        return {"kind": "denominator_mod", "m": self.m}


@dataclass(frozen=True)
class ConstantColoring(Coloring):
    range_size: int = 1
    c: int = 1

    def __post_init__(self):
        if self.range_size < 1 or not 1 <= self.c <= self.range_size:
            raise InvalidInputError(f"Constant color {self.c} outside [1..{self.range_size}]")

    @property
    def r(self) -> int:
        return self.range_size

    def color(self, q) -> int:
        return self.c

    def descriptor(self) -> Dict[str, Any]:
        return {"kind": "constant", "r": self.range_size, "c": self.c}


def cantor_code(q) -> int:
    """Canonical integer encoding of a reduced fraction (Cantor pairing)."""
    q = pos(q)
    a, b = q.numerator, q.denominator
    return (a + b) * (a + b + 1) // 2 + b


@dataclass(frozen=True)
class SeededRandom(Coloring):
    """Reproducible adversary: sha256(seed, bucket) mod r.

    The bucket is the Cantor code of the reduced fraction, integer-divided by
    ``height_bucket`` when set, so neighbouring codes share a color.
    """

    range_size: int
    seed: int = 0
    height_bucket: Optional[int] = None

    def __post_init__(self):
        if self.range_size < 1:
            raise InvalidInputError(f"Random coloring needs r >= 1, got {self.range_size}")
        if self.height_bucket is not None and self.height_bucket < 1:
            raise InvalidInputError(f"height_bucket must be >= 1, got {self.height_bucket}")

    @property
    def r(self) -> int:
        return self.range_size

    def color(self, q) -> int:
        bucket = cantor_code(q)
        if self.height_bucket:
            bucket //= self.height_bucket
        digest = hashlib.sha256(f"{self.seed}:{bucket}".encode()).digest()
        return 1 + int.from_bytes(digest[:8], "big") % self.range_size

    def descriptor(self) -> Dict[str, Any]:
        spec = {"kind": "random", "r": self.range_size, "seed": self.seed}
        if self.height_bucket is not None:
            spec["height_bucket"] = self.height_bucket
        return spec


@dataclass(frozen=True)
class ProductColoring(Coloring):
    """Mixed-radix product: 1 + Σ (c_i − 1)·Π_{j<i} r_j."""

    parts: Tuple[Coloring, ...]

    def __post_init__(self):
        if not self.parts:
            raise InvalidInputError("A product coloring needs at least one factor")
        object.__setattr__(self, "parts", tuple(self.parts))

    @property
    def r(self) -> int:
        return math.prod(p.r for p in self.parts)

    def color(self, q) -> int:
        code, radix = 0, 1
        for part in self.parts:
            code += (part(q) - 1) * radix
            radix *= part.r
        return 1 + code

    def defined(self, q) -> bool:
        return all(p.defined(q) for p in self.parts)

    def descriptor(self) -> Dict[str, Any]:
        return {"kind": "product", "parts": [p.descriptor() for p in self.parts]}


@dataclass(frozen=True)
class TableColoring(Coloring):
    """Explicit coloring of [1..N]; colors[i-1] is the color of i.

    Outside [1..N] the coloring is undefined (it evaluates to 1 there).
    """

    colors: Tuple[int, ...]
    range_size: Optional[int] = None

    def __post_init__(self):
        colors = tuple(int(c) for c in self.colors)
        r = self.range_size if self.range_size is not None else max(colors, default=1)
        if any(not 1 <= c <= r for c in colors):
            raise InvalidInputError(f"Table colors must lie in [1..{r}]")
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "range_size", r)

    @property
    def r(self) -> int:
        return self.range_size

    @property
    def size(self) -> int:
        return len(self.colors)

    def defined(self, q) -> bool:
        q = pos(q)
        return q.denominator == 1 and q.numerator <= len(self.colors)

    def color(self, q) -> int:
        if not self.defined(q):
            return 1
        return self.colors[pos(q).numerator - 1]

    def classes(self) -> Tuple[Tuple[int, ...], ...]:
        """Color classes as sorted tuples of naturals, in color order."""
        return tuple(
            tuple(i + 1 for i, c in enumerate(self.colors) if c == color)
            for color in range(1, self.range_size + 1)
        )

    def descriptor(self) -> Dict[str, Any]:
        return {"kind": "table", "r": self.range_size, "colors": list(self.colors)}


@dataclass(frozen=True)
class IntegerWindow:
    """Domain predicate q ∈ {lo, …, hi} ⊂ ℕ."""

    lo: int
    hi: int

    def __call__(self, q) -> bool:
        q = pos(q)
        return q.denominator == 1 and self.lo <= q.numerator <= self.hi


@dataclass(frozen=True)
class RestrictedColoring(Coloring):
    """Partial coloring: ``base`` on the domain cut out by ``predicate``."""

    base: Coloring
    predicate: Callable[[Any], bool]

    @property
    def r(self) -> int:
        return self.base.r

    def defined(self, q) -> bool:
        return self.base.defined(q) and bool(self.predicate(q))

    def color(self, q) -> int:
        return self.base(q)

    def descriptor(self) -> Dict[str, Any]:
        spec = {"kind": "restricted", "base": self.base.descriptor()}
        if isinstance(self.predicate, IntegerWindow):
            spec["window"] = [self.predicate.lo, self.predicate.hi]
        return spec


def restrict(base: Coloring, predicate: Callable[[Any], bool]) -> RestrictedColoring:
    return RestrictedColoring(base, predicate)


def _int_param(spec: Mapping[str, Any], key: str, default: Optional[int] = None) -> int:
    value = spec.get(key, default)
    if value is None:
        raise ParseError(f"Coloring spec {dict(spec)} misses '{key}'")
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"Coloring parameter '{key}' must be an integer, got {value!r}")
    return value


def coloring_from_spec(spec: Union[str, Mapping[str, Any]]) -> Coloring:
    """Decode a JSON coloring spec (text or already-parsed mapping)."""
    if isinstance(spec, str):
        try:
            spec = json.loads(spec)
        except json.JSONDecodeError as e:
            raise ParseError(f"Coloring spec is not valid JSON: {e}") from e
    if not isinstance(spec, Mapping) or "kind" not in spec:
        raise ParseError(f"Coloring spec must be an object with a 'kind': {spec!r}")

    kind = spec["kind"]
    try:
        if kind == "val2_parity":
            return Val2Parity()
        if kind == "val2_mod":
            return Val2Mod(_int_param(spec, "m"))
        if kind == "numerator_mod":
            return NumeratorMod(_int_param(spec, "m"))
        if kind == "denominator_mod":
            return DenominatorMod(_int_param(spec, "m"))
        if kind == "constant":
            return ConstantColoring(_int_param(spec, "r", 1), _int_param(spec, "c", 1))
        if kind == "random":
            bucket = spec.get("height_bucket")
            return SeededRandom(
                _int_param(spec, "r", 2),
                _int_param(spec, "seed", 0),
                None if bucket is None else _int_param(spec, "height_bucket"),
            )
        if kind == "product":
            parts = spec.get("parts")
            if not isinstance(parts, list):
                raise ParseError("Product coloring needs a 'parts' list")
            return ProductColoring(tuple(coloring_from_spec(p) for p in parts))
        if kind == "table":
            colors = spec.get("colors")
            if not isinstance(colors, list) or not colors:
                raise ParseError("Table coloring needs a nonempty 'colors' list")
            return TableColoring(tuple(colors), spec.get("r"))
        if kind == "restricted":
            base = coloring_from_spec(spec.get("base") or {})
            window = spec.get("window")
            if not (isinstance(window, list) and len(window) == 2):
                raise ParseError("Restricted coloring needs a 'window' [lo, hi]")
            return RestrictedColoring(base, IntegerWindow(int(window[0]), int(window[1])))
    except ParseError:
        raise
    except (InvalidInputError, TypeError, ValueError) as e:
        raise ParseError(f"Invalid coloring spec {dict(spec)}: {e}") from e

    raise ParseError(f"Unknown coloring kind: {kind!r}")


def builtin(kind: str, **params: Any) -> Coloring:
    """Shorthand for ``coloring_from_spec({"kind": kind, **params})``."""
    logger.debug("Building coloring %s %s", kind, params)
    return coloring_from_spec({"kind": kind, **params})
