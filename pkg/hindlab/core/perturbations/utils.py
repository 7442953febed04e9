from __future__ import annotations

import re
from typing import Any, Dict, Optional

from hindlab.core.arithmetic.operations import format_rational, parse_rational
from hindlab.core.arithmetic.schemas import NonnegRational
from hindlab.core.errors import InvalidInputError, ParseError
from hindlab.core.families.schemas import RatioIndex
from hindlab.core.families.utils import parse_ratio_pair
from .schemas import Dilation, Perturbation, RatioWeights, Shift

_LITERAL = re.compile(r"^\s*shift\{(?P<shift>[^}]*)\}\s*dil\{(?P<dil>[^}]*)\}\s*$")


def _parse_weight(text: str) -> NonnegRational:
    text = text.strip()
    # "0" and "0/1" are the only zero spellings
    if text in ("0", "0/1"):
        return NonnegRational(0)
    return parse_rational(text)


def parse_perturbation(text: str, omega: Optional[RatioIndex] = None) -> Perturbation:
    """Parse "shift{(1|2):3/2} dil{2,3}".

    Entries of the shift are separated by ";". Without ``omega`` the
    ratio index is the set of pairs named in the literal.
    """
    match = _LITERAL.match(text or "")
    if match is None:
        raise ParseError(f"Invalid perturbation literal: {text!r}")

    weights = {}
    for entry in (e for e in match.group("shift").split(";") if e.strip()):
        if ":" not in entry:
            raise ParseError(f"Shift entry {entry!r} needs 'pair:weight'")
        pair_text, weight_text = entry.rsplit(":", 1)
        pair = parse_ratio_pair(pair_text)
        if pair in weights:
            raise ParseError(f"Pair {pair} appears twice in {text!r}")
        weights[pair] = _parse_weight(weight_text)

    dil = [t for t in match.group("dil").split(",") if t.strip()]
    if len(dil) != 2:
        raise ParseError(f"Dilation needs two factors, got {match.group('dil')!r}")

    if omega is None:
        omega = RatioIndex(tuple(weights))
    try:
        lam = RatioWeights.from_mapping(omega, weights)
    except InvalidInputError as e:
        raise ParseError(str(e)) from e
    return Perturbation(Shift(lam), Dilation(parse_rational(dil[0]), parse_rational(dil[1])))


def format_perturbation(p: Perturbation) -> str:
    """Inverse of :func:`parse_perturbation`; every pair of Ω is written out."""
    entries = ";".join(f"{pair}:{format_rational(w)}" for pair, w in p.shift.weights.items())
    return f"shift{{{entries}}} dil{{{format_rational(p.dilation.q1)},{format_rational(p.dilation.q2)}}}"


def weights_to_json(weights: RatioWeights) -> Dict[str, NonnegRational]:
    return weights.as_dict()


def perturbation_to_json(p: Perturbation) -> Dict[str, Any]:
    return {
        "shift": weights_to_json(p.shift.weights),
        "dilation": [p.dilation.q1, p.dilation.q2],
        "literal": format_perturbation(p),
    }
