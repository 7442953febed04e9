"""
Canonical JSON reports.

Keys are sorted, every rational is written "a/b" and floats are refused, so
two runs with the same arguments and seed differ at most in elapsed_ms.
"""

from __future__ import annotations

import json
import re
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from typing import Any, Dict

from hindlab import config
from hindlab.core.arithmetic.operations import format_rational
from hindlab.core.arithmetic.schemas import NonnegRational, RatVector
from hindlab.core.errors import ParseError
from hindlab.core.families.schemas import NFamily, RatioIndex, RatioPair
from hindlab.core.patterns.schemas import Check

_RATIONAL = re.compile(r"^(\d+)/(\d+)$")


def to_canonical(obj: Any) -> Any:
    """JSON-ready copy of ``obj``: rationals as "a/b", families and pairs as text."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        raise TypeError(f"Floating-point value {obj!r} cannot enter a report")
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, (NFamily, RatioPair)):
        return str(obj)
    if isinstance(obj, RatioIndex):
        return [str(p) for p in obj]
    if isinstance(obj, RatVector):
        return [format_rational(e) for e in obj]
    if isinstance(obj, Check):
        return obj.to_dict()
    if hasattr(obj, "to_dict"):
        return to_canonical(obj.to_dict())
    if isinstance(obj, dict):
        return {str(to_canonical(k)): to_canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_canonical(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted((to_canonical(v) for v in obj), key=str)
    if is_dataclass(obj):
        return to_canonical(asdict(obj))
    raise TypeError(f"Cannot place {type(obj).__name__} in a report")


def emit_report(result: Any) -> str:
    payload = to_canonical(result)
    if isinstance(payload, dict):
        payload.setdefault("checks", [])
        payload["schema_version"] = config.SCHEMA_VERSION
    return json.dumps(payload, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def _decode(value: Any) -> Any:
    if isinstance(value, str):
        match = _RATIONAL.match(value)
        if match and int(match.group(2)) != 0:
            return NonnegRational(int(match.group(1)), int(match.group(2)))
        return value
    if isinstance(value, list):
        return [_decode(v) for v in value]
    if isinstance(value, dict):
        return {k: _decode(v) for k, v in value.items()}
    return value


def parse_report(text: str) -> Dict[str, Any]:
    """Inverse of ``emit_report``: "a/b" strings come back as exact rationals."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"Report is not valid JSON: {e}") from e
    return _decode(data)
