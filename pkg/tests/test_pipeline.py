from fractions import Fraction

import pytest

from hindlab.core.arithmetic.operations import scale
from hindlab.core.arithmetic.schemas import RatVector
from hindlab.core.colorings.builtin import IntegerWindow, SeededRandom, restrict
from hindlab.core.colorings.consistency import is_X_consistent
from hindlab.core.errors import (
    BudgetExceededError,
    DimensionError,
    InvalidInputError,
    NotFoundError,
    VerificationError,
)
from hindlab.core.families.enumeration import enumerate_families, enumerate_lower
from hindlab.core.families.schemas import index_set
from hindlab.core.patterns.schemas import SearchBudget
from hindlab.core.pipeline import search
from hindlab.core.pipeline.build import build_full_consistent, build_lower_consistent
from hindlab.core.pipeline.schemas import PipelineConfig
from hindlab.core.pipeline.search import (
    constructive_witness,
    direct_search,
    generalized_witness,
    hindman_witness,
    run_pipeline,
)
from hindlab.core.pipeline.witness import pattern_values, reduction_holds, verify_witness


class TestPatternValues:
    """Test suite for pattern values and the re-verifier."""

    def test_values_of_two(self):
        values = pattern_values(RatVector.of(1, 3))
        assert values == {"sum:1": 1, "sum:2": 3, "sum:1|2": 4, "prod:1,2": 3}

    def test_value_count(self):
        # 2^k - 1 sums, 2^k - 1 - k products of two or more
        assert len(pattern_values(RatVector.of(1, 2, 3))) == 7 + 4

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            pattern_values(RatVector.of(1, 3), k=3)

    def test_good_witness(self, val2):
        errors, computed = verify_witness(RatVector.of(1, 3), val2)
        assert errors == []
        assert computed["color"] == 1
        assert computed["distinct"]

    def test_bad_witness(self, val2):
        errors, computed = verify_witness(RatVector.of(1, 2), val2)
        assert errors
        assert computed["color"] is None
        assert computed["colors"]["sum:2"] == 2

    def test_recorded_color_mismatch(self, val2):
        errors, _ = verify_witness(RatVector.of(1, 3), val2, color=2)
        assert any("Recorded color" in e for e in errors)

    def test_undefined_color(self, val2):
        C = restrict(val2, IntegerWindow(1, 3))
        errors, _ = verify_witness(RatVector.of(1, 3), C)
        assert any("undefined" in e for e in errors)

    def test_reduction(self):
        v = RatVector.of(1, 3, Fraction(1, 2))
        blocks = [index_set({1, 3}), index_set({2})]
        x = RatVector.of(Fraction(1, 2), 3)
        assert reduction_holds(blocks, v, x)
        assert not reduction_holds(blocks, v, RatVector.of(1, 3))


class TestConsistentBuild:
    """Test suite for the inductive consistent-vector builder."""

    def test_lower_two(self, val2):
        built = build_lower_consistent(2, (1,), val2)
        assert built.v == RatVector.of(1, 3)
        assert built.verified
        assert built.stages[-1]["n"] == 2

    def test_one_is_trivial(self, val2):
        assert build_lower_consistent(1, (1,), val2).v == RatVector.of(1)

    def test_full_two(self, val2):
        built = build_full_consistent(2, (1,), val2)
        assert built.verified
        assert built.to_dict()["mode"] == "full"

    def test_dilation_set(self, val2):
        built = build_lower_consistent(2, (1, 2), val2)
        assert built.verified
        assert len(built.checks) == 2

    def test_lower_two_is_one_three(self, val2):
        """The canonical n = 2 answer under val2 parity is (1, 3): 1, 3, 4 and 3 all have even valuation."""
        assert build_lower_consistent(2, (1,), val2).v == RatVector.of(1, 3)

    @pytest.mark.slow
    def test_lower_three(self, val2):
        built = build_lower_consistent(3, (1,), val2)
        assert len(built.v) == 3
        assert built.verified

    @pytest.mark.slow
    def test_lower_three_with_dilations(self, val2):
        built = build_lower_consistent(3, (1, 2), val2)
        assert built.verified
        for q in (1, 2):
            assert is_X_consistent(scale(q, built.v), enumerate_lower(3), val2)

    @pytest.mark.slow
    def test_full_three(self, val2):
        built = build_full_consistent(3, (1,), val2)
        assert built.verified
        assert is_X_consistent(built.v, enumerate_families(3), val2)


class TestDirectSearch:
    """Test suite for the height-ordered witness search."""

    def test_val2_pair(self, val2):
        w = direct_search(2, val2)
        assert w.x == RatVector.of(Fraction(1, 3), 1)
        assert w.color == 1

    def test_constant_coloring(self, constant):
        assert direct_search(2, constant).x == RatVector.of(1, 1)

    def test_distinct(self, constant):
        w = direct_search(2, constant, require_distinct=True)
        assert w.distinct

    def test_parallel_matches_sequential(self, val2):
        assert direct_search(2, val2, jobs=2).x == direct_search(2, val2).x

    @pytest.mark.parametrize("max_candidates", [3, 20, 60, 400])
    def test_parallel_shares_the_candidate_budget(self, max_candidates):
        """Under a tight budget both modes stop at the same place or find the same witness."""
        C = SeededRandom(2, 11)

        def outcome(jobs):
            budget = SearchBudget(height_bound=32, max_candidates=max_candidates)
            try:
                return "found", tuple(direct_search(3, C, budget, jobs=jobs).x)
            except BudgetExceededError as e:
                return "exhausted", e.stats["candidates"], tuple(e.partial["x"])

        assert outcome(2) == outcome(1)

    def test_height_exhausted(self, val2):
        with pytest.raises(BudgetExceededError) as exc:
            direct_search(3, val2, SearchBudget(height_bound=1))
        assert "x" in exc.value.partial

    def test_bad_arguments(self, val2):
        with pytest.raises(InvalidInputError):
            direct_search(0, val2)
        with pytest.raises(InvalidInputError):
            direct_search(2, val2, jobs=0)


class TestWitnessRoutes:
    """Test suite for the direct and constructive routes."""

    def test_constructive_pair(self, val2):
        witness, trace = constructive_witness(2, val2)
        assert witness.x == RatVector.of(1, 3)
        assert trace["n"] == 2
        assert trace["reduction"]

    def test_hindman_report(self, val2):
        report = hindman_witness(2, val2)
        assert report.found
        assert report.verified
        assert report.witness["route"] == "direct"
        assert report.params["coloring"] == {"kind": "val2_parity"}

    def test_constructive_report(self, val2):
        report = hindman_witness(2, val2, route="constructive")
        assert report.verified
        assert report.witness["construction"]["blocks"] == [[1], [2]]

    def test_auto_prefers_direct(self, val2):
        assert hindman_witness(2, val2, route="auto").witness["route"] == "direct"

    def test_unknown_route(self, val2):
        with pytest.raises(InvalidInputError):
            hindman_witness(2, val2, route="sideways")

    def test_budget_error_is_not_found(self, val2):
        with pytest.raises(NotFoundError):
            hindman_witness(3, val2, SearchBudget(height_bound=1))

    def test_failed_recheck_raises(self, val2, monkeypatch):
        real = search.verify_witness

        def mismatched(*args, **kwargs):
            _, computed = real(*args, **kwargs)
            return ["injected mismatch"], computed

        monkeypatch.setattr(search, "verify_witness", mismatched)
        with pytest.raises(VerificationError) as exc:
            hindman_witness(2, val2, route="direct")
        assert exc.value.failed == ["pattern monochromatic"]

    def test_failed_recheck_does_not_fall_back(self, val2, monkeypatch):
        monkeypatch.setattr(search, "verify_witness", lambda x, C, **kw: (["injected mismatch"], {"values": {}}))
        with pytest.raises(VerificationError):
            hindman_witness(2, val2, route="auto")

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_random_colorings(self, seed):
        """A verified witness within height 256, or a not-found report carrying the best partial pattern."""
        C = SeededRandom(2, seed)
        try:
            report = hindman_witness(2, C, SearchBudget(height_bound=256))
        except NotFoundError as e:
            assert "x" in e.partial
            return
        assert report.found
        assert report.verified
        x = RatVector.of(*report.witness["x"])
        assert verify_witness(x, C)[0] == []

    def test_generalized_pair(self, val2):
        report = generalized_witness(2, val2)
        assert report.verified
        assert report.witness["x"] == [Fraction(1, 3), 1]
        # one value per 2-family
        assert len(report.witness["values"]) == 4


class TestPipelineConfig:
    """Test suite for PipelineConfig and the dispatcher."""

    def test_defaults(self):
        cfg = PipelineConfig()
        assert cfg.mode == "theorem1"
        assert cfg.r == 2

    def test_Q_deduplicated(self):
        assert PipelineConfig(Q=(1, 1, 2)).Q == (1, 2)

    @pytest.mark.parametrize("kwargs", [
        {"mode": "sideways"},
        {"route": "teleport"},
        {"n": 0},
        {"k": 0},
        {"jobs": 0},
        {"Q": ()},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(InvalidInputError):
            PipelineConfig(**kwargs)

    def test_build_mode(self):
        payload = run_pipeline(PipelineConfig(mode="lower", n=2))
        assert payload["command"] == "build lower"
        assert payload["witness"]["v"] == [1, 3]
        assert all(c["pass"] for c in payload["checks"])

    def test_witness_mode(self):
        payload = run_pipeline(PipelineConfig(k=2))
        assert payload["command"] == "hindman"
        assert payload["witness"]["x"] == [Fraction(1, 3), 1]
