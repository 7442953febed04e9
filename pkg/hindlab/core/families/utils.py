from __future__ import annotations

from typing import Any, List, Optional, Sequence

from hindlab.core.errors import InvalidInputError, ParseError
from .schemas import NFamily, RatioPair, index_set, sorted_tuple


def _parse_index_list(text: str, literal: str) -> List[int]:
    items = [t.strip() for t in text.split(",") if t.strip()]
    try:
        return [int(t) for t in items]
    except ValueError:
        raise ParseError(f"Invalid index in literal {literal!r}") from None


def parse_family(text: str, ground: Optional[int] = None) -> NFamily:
    """Parse the literal "1|2,3" into {{1},{2,3}}.

    The ground defaults to the largest index that appears.
    """
    chunks = (text or "").strip().split("|")
    parts = [_parse_index_list(chunk, text) for chunk in chunks]
    if not parts or any(not p for p in parts):
        raise ParseError(f"Invalid family literal: {text!r}")
    if ground is None:
        ground = max(max(p) for p in parts)
    try:
        return NFamily(ground, tuple(index_set(p) for p in parts))
    except InvalidInputError as e:
        raise ParseError(f"Invalid family literal {text!r}: {e}") from e


def format_family(fam: NFamily) -> str:
    return str(fam)


def family_to_json(fam: NFamily) -> List[List[int]]:
    return [list(sorted_tuple(p)) for p in fam.parts]


def family_from_json(data: Sequence[Sequence[Any]], ground: Optional[int] = None) -> NFamily:
    try:
        parts = [index_set(p) for p in data]
    except (TypeError, ValueError) as e:
        raise ParseError(f"Invalid family JSON {data!r}") from e
    if not parts or any(not p for p in parts):
        raise ParseError(f"Invalid family JSON {data!r}")
    if ground is None:
        ground = max(max(p) for p in parts)
    return NFamily(ground, tuple(parts))


def parse_ratio_pair(text: str) -> RatioPair:
    """Parse "(1,2|3)" into ({1,2},{3}); the B side may be empty: "(1|)"."""
    body = (text or "").strip()
    if not (body.startswith("(") and body.endswith(")")) or "|" not in body:
        raise ParseError(f"Invalid ratio pair literal: {text!r}")
    a_text, b_text = body[1:-1].split("|", 1)
    a = _parse_index_list(a_text, text)
    b = _parse_index_list(b_text, text)
    if not a:
        raise ParseError(f"Ratio pair {text!r} needs a nonempty A side")
    return RatioPair(index_set(a), index_set(b))
