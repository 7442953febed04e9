"""
Stabilizers and the multi-task back-tracking.

A perturbation h = σ_λ∘R_{h*} acting before a target shift σ is rewritten as
R_{h*}∘σ_{λ″} (uncommuting the shift past the dilation). On a coloring of
𝒞_S the dilation only rescales the projection by q2·q1^{|S|}, so every
h ∈ H is absorbed into one auxiliary coloring over the dilation parts, and
the shift parts become the target weights Ξ of a single shift task.
"""

from __future__ import annotations

import logging
from typing import Dict, Iterable, List, Sequence, Set, Tuple

from hindlab.core.arithmetic.schemas import PosRational
from hindlab.core.colorings.points import ProjectedColoring, auxiliary
from hindlab.core.errors import InvalidInputError, NotFoundError
from hindlab.core.families.schemas import RatioIndex
from hindlab.core.patterns.schemas import Check, require_verified
from hindlab.core.perturbations.algebra import (
    apply,
    compose,
    compose_all,
    identity_perturbation,
    pure_dilation,
    uncommute_shift_past_dilation,
)
from hindlab.core.perturbations.schemas import Dilation, Perturbation, PointX, RatioWeights, Shift
from hindlab.core.shifting.engine import general_term_shift
from hindlab.core.shifting.schemas import ShiftTask
from .schemas import MultiTaskInstance, MultiTaskResult, StabilizerResult, StabilizerTask

logger = logging.getLogger(__name__)


def stably_consistent(target: Shift, H: Iterable[Perturbation], C, pt: PointX) -> bool:
    """C(σ∘h(pt)) = C(h(pt)) for every h ∈ H."""
    for h in H:
        moved = apply(h, pt)
        shifted = apply(target, moved)
        if not (C.defined(moved) and C.defined(shifted)) or C(shifted) != C(moved):
            return False
    return True


def split_parts(H: Sequence[Perturbation], target: Shift) -> Tuple[List[Dilation], List[RatioWeights]]:
    """Dilation parts H* and the weights Ξ = {λ_h″, (λ_h + σ)″} pushed past every h* ∈ H*."""
    dilations = list(dict.fromkeys(h.dilation for h in H))
    shift_parts = list(dict.fromkeys(
        w for h in H for w in (h.shift.weights, h.shift.weights + target.weights)
    ))
    xi: Dict[RatioWeights, None] = {}
    for weights in shift_parts:
        for dilation in dilations:
            moved = uncommute_shift_past_dilation(weights, dilation)
            if not moved.is_zero():
                xi[moved] = None
    return dilations, list(xi)


def _task_index(xi: Sequence[RatioWeights], omega: RatioIndex, support_size: int) -> RatioIndex:
    pairs = {p for w in xi for p in w.support()}
    local = omega.restricted(pairs)
    for pair in local:
        if len(pair.a) + support_size <= len(pair.b):
            raise InvalidInputError(f"Pair {pair} violates |A| + |S| > |B| with |S| = {support_size}")
    return local


def stabilize(task: StabilizerTask) -> StabilizerResult:
    """p′ = R_{(d, d^{-|S|})}∘σ_δ with p′(pt) H-stably consistent for the target shift."""
    C = task.coloring
    S = C.support
    omega = task.omega
    dilations, xi = split_parts(task.H, task.target)
    local = _task_index(xi, omega, len(S))
    aux = auxiliary(C, dilations)

    shift_task = ShiftTask(S, local, tuple(w.restricted(local) for w in xi), aux.r)
    shift = general_term_shift(shift_task, aux.base, task.point.u, task.point.x, task.budget)

    delta = shift.delta.embedded(omega)
    d = PosRational(shift.d)
    move = pure_dilation(d, 1 / d ** len(S), omega)
    perturbation = compose(move, Perturbation(Shift(delta), Dilation(1, 1)))
    point = apply(perturbation, task.point)

    result = StabilizerResult(perturbation, point, shift)
    result.checks.extend(shift.checks)
    result.checks.append(Check("normal form matches shift result",
                               point.x == shift.x_prime and point.u == shift.u_prime))
    result.checks.append(Check("H-stable consistency", stably_consistent(task.target, task.H, C, point)))
    result.transcript = {
        "S": sorted(S),
        "omega_size": len(local),
        "H_size": len(task.H),
        "dilations": len(dilations),
        "xi_size": len(xi),
        "aux_range": aux.r,
        "result": {"d": shift.d, "delta": delta.as_dict()},
    }
    require_verified(result.checks, "Stabilizer", stats=result.transcript)
    return result


def _compose_sets(H: Iterable[Perturbation], P: Iterable[Perturbation]) -> List[Perturbation]:
    return list(dict.fromkeys(compose(h, p) for h in H for p in P))


def multitask(inst: MultiTaskInstance) -> MultiTaskResult:
    """Composite p′ with C_t(σ_t∘h(p′(pt))) = C_t(h(p′(pt))) for every stage t and h ∈ base H.

    Stage t must stay consistent after the later stages act, so it is
    stabilized against H_t = base∘P′_ℓ∘…∘P′_{t+1}, where P′_s collects the
    perturbations stage s has produced so far (identity included). Forward
    passes repeat until no stage produces a perturbation outside its set.
    """
    if not inst.stages:
        omega = inst.base_H[0].omega
        return MultiTaskResult(identity_perturbation(omega), inst.point, [], rounds=0)

    omega = inst.stages[0].target.omega
    ell = len(inst.stages)
    identity = identity_perturbation(omega)
    observed: List[List[Perturbation]] = [[identity] for _ in range(ell)]
    transcript: List[Dict] = []

    for round_no in range(1, inst.max_rounds + 1):
        # H[t] guards stage t (0-based): base composed with the later stages' sets
        H: List[List[Perturbation]] = [[] for _ in range(ell)]
        H[ell - 1] = list(inst.base_H)
        for t in range(ell - 1, 0, -1):
            H[t - 1] = _compose_sets(H[t], observed[t])

        point = inst.point
        chosen: List[Perturbation] = []
        transcript = []
        fresh = False
        for t, stage in enumerate(inst.stages):
            if stably_consistent(stage.target, H[t], stage.coloring, point):
                p, entry = identity, {"d": 1, "delta": {}}
            else:
                try:
                    res = stabilize(StabilizerTask(stage.target, tuple(H[t]), stage.coloring, point, inst.budget))
                except NotFoundError as e:
                    raise NotFoundError(f"Stage {t + 1} ({stage.label}): {e}",
                                        partial={"stage": t + 1, "transcript": transcript},
                                        stats=e.stats) from e
                p, entry = res.perturbation, res.transcript["result"]
            if p not in observed[t]:
                observed[t].append(p)
                fresh = fresh or t > 0
            chosen.append(p)
            point = apply(p, point)
            transcript.append({
                "stage": t + 1,
                "family": stage.label,
                "S": sorted(stage.coloring.support),
                "omega_size": len(stage.omega) if stage.omega is not None else len(omega),
                "H_size": len(H[t]),
                "P_size": len(observed[t]),
                "result": entry,
            })

        final_ok = all(stably_consistent(s.target, inst.base_H, s.coloring, point) for s in inst.stages)
        logger.debug("Multi-task round %d: consistent=%s fresh=%s", round_no, final_ok, fresh)
        if final_ok:
            break
        if not fresh:
            # nothing new to guard against: the next pass would repeat this one
            break
    else:
        round_no = inst.max_rounds

    composite = compose_all(reversed(chosen), omega)
    result = MultiTaskResult(composite, point, chosen, transcript=transcript, rounds=round_no)
    result.checks.append(Check("composite equals stagewise application", apply(composite, inst.point) == point))
    for t, stage in enumerate(inst.stages, start=1):
        ok = stably_consistent(stage.target, inst.base_H, stage.coloring, point)
        result.checks.append(Check(f"stage {t} consistent", ok))
        transcript[t - 1]["verified"] = ok
    lam: Set[RatioWeights] = {h.shift.weights for h in H[0]} if ell else set()
    result_lambda = [w.as_dict() for w in sorted(lam, key=lambda w: tuple(w.values))]
    if transcript:
        transcript[0]["Lambda"] = result_lambda
    require_verified(result.checks, f"Multi-task search after {round_no} rounds",
                     partial={"transcript": transcript}, stats={"rounds": round_no})
    return result
