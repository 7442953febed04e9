from fractions import Fraction

import pytest

from hindlab.core.arithmetic.operations import scale
from hindlab.core.arithmetic.schemas import RatVector
from hindlab.core.colorings.consistency import is_X_consistent
from hindlab.core.colorings.points import QuotientParity, project_coloring
from hindlab.core.errors import InvalidInputError
from hindlab.core.families.enumeration import enumerate_all_new, enumerate_families
from hindlab.core.families.schemas import NFamily, RatioIndex, ratio_pair
from hindlab.core.perturbations.algebra import apply, family_shift, identity_perturbation, pure_dilation
from hindlab.core.perturbations.schemas import PointX, RatioWeights, Shift
from hindlab.core.stabilizers.delusion import naive_shift_search
from hindlab.core.stabilizers.engine import multitask, split_parts, stabilize, stably_consistent
from hindlab.core.stabilizers.extension import full_mode_order, stable_extension
from hindlab.core.stabilizers.schemas import MultiTaskInstance, MultiTaskStage, StabilizerTask
from hindlab.core.stabilizers.toy import IDENTITY, MaxMap, compact_witness, is_stabilizer


def nat_parity(n):
    return n % 2


@pytest.fixture
def fam():
    return NFamily.of(2, {1}, {2})


class TestToySystem:
    """Test suite for stabilizers of max maps on ℕ."""

    def test_max_map(self):
        assert MaxMap(3)(1) == 3
        assert MaxMap(3)(5) == 5
        assert MaxMap(2).then(MaxMap(4)) == MaxMap(4)

    def test_negative_threshold_rejected(self):
        with pytest.raises(InvalidInputError):
            MaxMap(-1)

    def test_compact_witness(self):
        assert compact_witness(nat_parity, [MaxMap(3)], range(10)) == 1
        assert compact_witness(nat_parity, [MaxMap(3), MaxMap(4)], range(3)) is None

    def test_stabilizer(self):
        """Pushing past the threshold first makes p act trivially."""
        candidates = range(12)
        assert is_stabilizer([IDENTITY, MaxMap(5)], [IDENTITY], MaxMap(5), nat_parity, candidates)
        assert not is_stabilizer([IDENTITY], [IDENTITY], MaxMap(5), nat_parity, candidates)


class TestStabilize:
    """Test suite for a single stabilizer task."""

    def test_split_parts(self, fam):
        omega = RatioIndex((ratio_pair({1}),))
        target = family_shift(fam, omega)
        dilations, xi = split_parts([identity_perturbation(omega)], target)
        assert len(dilations) == 1
        assert xi == [target.weights]

    def test_family_shift_task(self, val2, fam):
        omega = RatioIndex((ratio_pair({1}),))
        task = StabilizerTask(
            family_shift(fam, omega),
            (identity_perturbation(omega),),
            project_coloring(val2, ()),
            PointX(RatVector.of(1), 1),
        )
        result = stabilize(task)
        assert result.verified
        assert result.point == PointX(RatVector.of(1), 3)
        assert stably_consistent(task.target, task.H, task.coloring, result.point)

    def test_dilations_in_H(self, val2, fam):
        omega = RatioIndex((ratio_pair({1}),))
        H = (identity_perturbation(omega), pure_dilation(2, 2, omega))
        task = StabilizerTask(family_shift(fam, omega), H, project_coloring(val2, ()), PointX(RatVector.of(1), 1))
        result = stabilize(task)
        for h in H:
            moved = apply(h, result.point)
            assert val2(apply(task.target, moved).x) == val2(moved.x)

    def test_untagged_coloring_rejected(self, fam):
        omega = RatioIndex((ratio_pair({1}),))
        with pytest.raises(InvalidInputError):
            StabilizerTask(family_shift(fam, omega), (identity_perturbation(omega),), QuotientParity(),
                           PointX(RatVector.of(1), 1))

    def test_empty_H_rejected(self, val2, fam):
        omega = RatioIndex((ratio_pair({1}),))
        with pytest.raises(InvalidInputError):
            StabilizerTask(family_shift(fam, omega), (), project_coloring(val2, ()), PointX(RatVector.of(1), 1))


class TestMultiTask:
    """Test suite for the multi-task back-tracking."""

    def test_two_stages(self, val2):
        fams = [NFamily.of(3, {1}, {3}), NFamily.of(3, {2}, {3})]
        omega = RatioIndex((ratio_pair({1}), ratio_pair({2})))
        stages = tuple(MultiTaskStage(family_shift(f, omega), project_coloring(val2, ()), omega, str(f)) for f in fams)
        inst = MultiTaskInstance(stages, PointX(RatVector.of(1, 1), 1), (identity_perturbation(omega),))
        result = multitask(inst)
        assert result.verified
        for stage in stages:
            assert stably_consistent(stage.target, inst.base_H, stage.coloring, result.point)

    def test_three_stages(self, val2):
        fams = [NFamily.of(4, {1}, {4}), NFamily.of(4, {2}, {4}), NFamily.of(4, {3}, {4})]
        omega = RatioIndex((ratio_pair({1}), ratio_pair({2}), ratio_pair({3})))
        stages = tuple(MultiTaskStage(family_shift(f, omega), project_coloring(val2, ()), omega, str(f)) for f in fams)
        base_H = (identity_perturbation(omega), pure_dilation(2, 2, omega))
        inst = MultiTaskInstance(stages, PointX(RatVector.of(1, 1, 1), 1), base_H)
        result = multitask(inst)
        assert result.verified
        assert len(result.transcript) == 3
        for stage in stages:
            assert stably_consistent(stage.target, base_H, stage.coloring, result.point)

    def test_guard_sets_grow_by_later_stages(self, val2):
        """|H_{t-1}| <= |H_t| * |P'_t| along the transcript, and the last stage is guarded by the base set."""
        fams = [NFamily.of(4, {1}, {4}), NFamily.of(4, {2}, {4}), NFamily.of(4, {3}, {4})]
        omega = RatioIndex((ratio_pair({1}), ratio_pair({2}), ratio_pair({3})))
        stages = tuple(MultiTaskStage(family_shift(f, omega), project_coloring(val2, ()), omega, str(f)) for f in fams)
        base_H = (identity_perturbation(omega), pure_dilation(2, 2, omega))
        transcript = multitask(MultiTaskInstance(stages, PointX(RatVector.of(1, 1, 1), 1), base_H)).transcript
        assert transcript[-1]["H_size"] == len(base_H)
        for earlier, later in zip(transcript, transcript[1:]):
            assert earlier["H_size"] <= later["H_size"] * later["P_size"]

    def test_no_stages(self):
        omega = RatioIndex()
        inst = MultiTaskInstance((), PointX(RatVector.of(1), 2), (identity_perturbation(omega),))
        assert multitask(inst).point == inst.point

    def test_rounds_must_be_positive(self):
        omega = RatioIndex()
        with pytest.raises(InvalidInputError):
            MultiTaskInstance((), PointX(RatVector.of(1), 2), (identity_perturbation(omega),), max_rounds=0)


class TestStableExtension:
    """Test suite for extending u to a consistent v."""

    def test_extension_of_two(self, val2):
        ext = stable_extension(enumerate_all_new(2), (1,), val2, RatVector.of(2))
        assert ext.v == RatVector.of(2, 1)
        assert ext.verified

    def test_extension_with_dilations(self, val2):
        ext = stable_extension(enumerate_all_new(2), (1, 2), val2, RatVector.of(1))
        assert ext.verified
        for q in (1, 2):
            assert is_X_consistent(scale(q, ext.v), enumerate_all_new(2), val2)

    def test_full_mode(self, val2):
        ext = stable_extension(enumerate_all_new(2), (1,), val2, RatVector.of(1), mode="full")
        assert ext.verified

    def test_old_family_rejected(self, val2):
        with pytest.raises(InvalidInputError):
            stable_extension([NFamily.of(2, {1})], (1,), val2, RatVector.of(1))

    def test_unknown_mode(self, val2):
        with pytest.raises(InvalidInputError):
            stable_extension(enumerate_all_new(2), (1,), val2, RatVector.of(1), mode="greedy")

    def test_full_mode_order(self):
        ordered = full_mode_order(enumerate_all_new(3))
        sizes = [len(f.parts[-1]) for f in ordered]
        assert sizes == sorted(sizes)
        assert set(ordered) == set(enumerate_all_new(3))


class TestDilationOrbits:
    """A shift can change color at every point of a dilation orbit."""

    def test_naive_search_fails(self):
        omega = RatioIndex((ratio_pair({1}),))
        target = Shift(RatioWeights(omega, (1,)))
        report = naive_shift_search(target, QuotientParity(), PointX(RatVector.of(1), 1))
        assert not report.found
        assert report.params["orbit_size"] > 0

    def test_naive_search_finds_when_possible(self, val2):
        omega = RatioIndex((ratio_pair({1}),))
        target = Shift(RatioWeights(omega, (1,)))
        C = project_coloring(val2, ())
        # (q; 3q) moves to (q; 4q), and val2 parity agrees on 3q and 4q
        report = naive_shift_search(target, C, PointX(RatVector.of(1), 3), scales=[Fraction(1, 2), 1])
        assert report.found
        assert report.witness["q"] == Fraction(1, 2)

    def test_val2_orbit_always_flips(self, val2):
        omega = RatioIndex((ratio_pair({1}),))
        target = Shift(RatioWeights(omega, (1,)))
        C = project_coloring(val2, ())
        assert not naive_shift_search(target, C, PointX(RatVector.of(1), 1)).found

    def test_extension_still_succeeds(self, val2):
        ext = stable_extension(enumerate_families(2)[-1:], (1, 2), val2, RatVector.of(1))
        assert ext.verified
