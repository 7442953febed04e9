import pickle
from fractions import Fraction

import pytest

from hindlab.core.arithmetic.schemas import RatVector
from hindlab.core.colorings.builtin import (
    ConstantColoring,
    DenominatorMod,
    IntegerWindow,
    NumeratorMod,
    ProductColoring,
    SeededRandom,
    TableColoring,
    Val2Mod,
    Val2Parity,
    builtin,
    cantor_code,
    coloring_from_spec,
    restrict,
)
from hindlab.core.colorings.consistency import (
    CardinalityColoring,
    ConsistencyCheck,
    LeadingPartColoring,
    ProductSubsetColoring,
    family_coloring,
    is_family_consistent,
    is_X_consistent,
)
from hindlab.core.colorings.points import QuotientParity, ScaledTupleColoring, auxiliary, project_coloring
from hindlab.core.errors import DimensionError, InvalidInputError, ParseError
from hindlab.core.families.enumeration import enumerate_families, enumerate_lower
from hindlab.core.families.schemas import NFamily
from hindlab.core.perturbations.algebra import apply
from hindlab.core.perturbations.schemas import Dilation, PointX


class TestBuiltinColorings:
    """Test suite for the built-in colorings of ℚ₊."""

    def test_val2_parity(self, val2):
        assert [val2(q) for q in (1, 2, 3, 4, Fraction(1, 2), Fraction(4, 3))] == [1, 2, 1, 1, 2, 1]
        assert val2.r == 2

    def test_val2_mod(self):
        assert Val2Mod(3)(8) == 1
        assert Val2Mod(3)(Fraction(1, 2)) == 3

    def test_numerator_and_denominator(self, parity):
        assert parity(3) == 2
        assert parity(Fraction(4, 3)) == 1
        assert DenominatorMod(3)(Fraction(1, 3)) == 1
        assert DenominatorMod(3)(Fraction(1, 2)) == 3

    def test_bad_modulus(self):
        with pytest.raises(InvalidInputError):
            Val2Mod(0)

    def test_constant(self):
        C = ConstantColoring(3, 2)
        assert C(Fraction(7, 5)) == 2
        with pytest.raises(InvalidInputError):
            ConstantColoring(2, 3)

    def test_seeded_random_is_reproducible(self):
        a, b = SeededRandom(3, seed=11), SeededRandom(3, seed=11)
        values = [Fraction(p, q) for p in range(1, 8) for q in range(1, 8)]
        assert [a(v) for v in values] == [b(v) for v in values]
        assert all(1 <= a(v) <= 3 for v in values)

    def test_seeded_random_depends_on_seed(self):
        values = [Fraction(p, q) for p in range(1, 12) for q in range(1, 12)]
        assert [SeededRandom(2, 1)(v) for v in values] != [SeededRandom(2, 2)(v) for v in values]

    def test_cantor_code_depends_on_reduced_form(self):
        assert cantor_code(Fraction(2, 4)) == cantor_code(Fraction(1, 2))
        assert cantor_code(1) != cantor_code(2)

    def test_product(self, val2, parity):
        C = ProductColoring((val2, parity))
        assert C.r == 4
        # val2 color 2, numerator parity 1 -> 1 + 1*1 + 0*2
        assert C(2) == 2
        assert C(3) == 3

    def test_table(self):
        C = TableColoring((1, 2, 2, 1))
        assert C.r == 2
        assert C(3) == 2
        assert not C.defined(5)
        assert not C.defined(Fraction(1, 2))
        assert C.classes() == ((1, 4), (2, 3))

    def test_restricted(self, val2):
        C = restrict(val2, IntegerWindow(1, 4))
        assert C.defined(4)
        assert not C.defined(5)
        assert C.descriptor()["window"] == [1, 4]

    def test_colorings_pickle(self, val2):
        """Parallel searches ship colorings to worker processes."""
        for C in (val2, SeededRandom(3, 5), ProductColoring((val2, NumeratorMod(2)))):
            assert pickle.loads(pickle.dumps(C)) == C


class TestColoringSpecs:
    """Test suite for the JSON coloring codec."""

    @pytest.mark.parametrize("spec", [
        {"kind": "val2_parity"},
        {"kind": "val2_mod", "m": 3},
        {"kind": "numerator_mod", "m": 2},
        {"kind": "denominator_mod", "m": 5},
        {"kind": "constant", "r": 2, "c": 1},
        {"kind": "random", "r": 3, "seed": 4},
        {"kind": "random", "r": 2, "seed": 1, "height_bucket": 3},
        {"kind": "table", "r": 2, "colors": [1, 2, 2, 1]},
        {"kind": "product", "parts": [{"kind": "val2_parity"}, {"kind": "numerator_mod", "m": 2}]},
    ])
    def test_descriptor_round_trip(self, spec):
        C = coloring_from_spec(spec)
        assert C.descriptor() == spec
        assert coloring_from_spec(C.descriptor()) == C

    def test_text_spec(self):
        assert coloring_from_spec('{"kind": "val2_parity"}') == Val2Parity()

    def test_builtin_shorthand(self):
        assert builtin("numerator_mod", m=3) == NumeratorMod(3)

    @pytest.mark.parametrize("spec", [
        "{not json",
        {"m": 2},
        {"kind": "unknown"},
        {"kind": "val2_mod"},
        {"kind": "val2_mod", "m": "2"},
        {"kind": "constant", "r": 2, "c": 5},
        {"kind": "table", "colors": []},
        {"kind": "restricted", "base": {"kind": "val2_parity"}},
    ])
    def test_invalid_specs(self, spec):
        with pytest.raises(ParseError):
            coloring_from_spec(spec)


class TestConsistency:
    """Test suite for 𝓘-consistency and 𝔛-consistency."""

    def test_family_consistency(self, val2):
        fam = NFamily.of(2, {1}, {2})
        assert is_family_consistent(RatVector.of(1, 3), fam, val2)
        assert not is_family_consistent(RatVector.of(1, 1), fam, val2)

    def test_single_part_always_consistent(self, val2):
        fam = NFamily.of(3, {1, 3})
        assert is_family_consistent(RatVector.of(Fraction(1, 2), 5, 2), fam, val2)

    def test_X_consistency_reports_failing_family(self, val2):
        check = is_X_consistent(RatVector.of(1, 1), enumerate_families(2), val2)
        assert isinstance(check, ConsistencyCheck)
        assert not check
        assert check.failing == NFamily.of(2, {1}, {2})

    def test_X_consistency_passes(self, val2):
        check = is_X_consistent(RatVector.of(1, 3), enumerate_lower(2), val2)
        assert check
        assert check.checked == len(enumerate_lower(2))

    def test_mixed_grounds_rejected(self, val2):
        with pytest.raises(DimensionError):
            is_X_consistent(RatVector.of(1, 3), [NFamily.of(2, {1}), NFamily.of(3, {1})], val2)

    def test_partial_coloring_fails_outside_domain(self, val2):
        C = restrict(val2, IntegerWindow(1, 3))
        assert not is_family_consistent(RatVector.of(1, 3), NFamily.of(2, {1}, {2}), C)


class TestInducedColorings:
    """Test suite for colorings induced on families, subsets and points."""

    def test_family_coloring(self, val2):
        C = family_coloring(val2, RatVector.of(1, 3))
        assert C(NFamily.of(2, {1}, {2})) == val2(4)
        assert C.n == 2

    def test_product_subset_coloring(self, val2):
        c = ProductSubsetColoring(val2, RatVector.of(1, 2, 3))
        assert c({2, 3}) == val2(6)

    def test_cardinality_and_leading_part(self, parity):
        c = CardinalityColoring(parity)
        assert c({1, 2}) == 1
        assert c({3}) == 2
        lead = LeadingPartColoring(c)
        assert lead(NFamily.of(3, {1}, {2, 3})) == c({2, 3})

    def test_projected_coloring(self, val2):
        C = project_coloring(val2, {1})
        pt = PointX(RatVector.of(2, 5), 3)
        assert C.support == frozenset({1})
        assert C(pt) == val2(6)

    def test_auxiliary_separates_dilated_colors(self, val2):
        """C′(p) = C′(p′) iff C(h(p)) = C(h(p′)) for every h ∈ H."""
        C = project_coloring(val2, {1})
        H = [Dilation(1, 1), Dilation(2, 1)]
        aux = auxiliary(C, H)
        assert isinstance(aux.base, ScaledTupleColoring)
        assert aux.base.factors == (1, 2)
        points = [PointX(RatVector.of(u), x) for u in (1, 2, 3) for x in (1, Fraction(1, 2), 3, 6)]
        for p in points:
            for q in points:
                same = all(C(apply(h, p)) == C(apply(h, q)) for h in H)
                assert (aux(p) == aux(q)) == same

    def test_auxiliary_needs_tag(self):
        with pytest.raises(InvalidInputError):
            auxiliary(QuotientParity(), [Dilation(1, 1)])

    def test_quotient_parity(self):
        C = QuotientParity()
        pt = PointX(RatVector.of(2), 5)
        assert C(pt) == 1
        assert C(apply(Dilation(3, 3), pt)) == C(pt)
