import itertools
from fractions import Fraction

import pytest

from hindlab.core.arithmetic.schemas import RatVector
from hindlab.core.errors import BudgetExceededError, DimensionError, InvalidInputError, ParseError
from hindlab.core.families.calculus import (
    compose,
    is_extreme,
    is_lower,
    is_new,
    leading_part,
    leading_term,
    newp,
    part_product,
    phi,
)
from hindlab.core.families.enumeration import (
    enumerate_all_new,
    enumerate_extreme,
    enumerate_families,
    enumerate_lower,
    enumerate_new_multi,
    extreme_pattern_families,
    old_families,
)
from hindlab.core.families.schemas import NFamily, RatioIndex, family_sort_key, ratio_pair
from hindlab.core.families.utils import (
    family_from_json,
    family_to_json,
    parse_family,
    parse_ratio_pair,
)


def brute_force_families(n):
    """Every family on [n], by labelling each index with a block or 0 (unused)."""
    found = set()
    for labels in itertools.product(range(n + 1), repeat=n):
        blocks = {}
        for i, label in enumerate(labels, start=1):
            if label:
                blocks.setdefault(label, set()).add(i)
        if blocks:
            found.add(frozenset(frozenset(b) for b in blocks.values()))
    return found


class TestNFamily:
    """Test suite for the NFamily dataclass."""

    def test_parts_sorted_by_max(self):
        fam = NFamily.of(3, {3}, {1, 2})
        assert fam.parts == (frozenset({1, 2}), frozenset({3}))
        assert str(fam) == "1,2|3"

    def test_overlapping_parts_rejected(self):
        with pytest.raises(InvalidInputError):
            NFamily.of(3, {1, 2}, {2, 3})

    def test_empty_part_rejected(self):
        with pytest.raises(InvalidInputError):
            NFamily.of(2, {1}, set())

    def test_part_outside_ground_rejected(self):
        with pytest.raises(InvalidInputError):
            NFamily.of(2, {1, 3})

    def test_support(self):
        assert NFamily.of(4, {1}, {3, 4}).support == frozenset({1, 3, 4})


class TestCalculus:
    """Test suite for φ, leading parts and family composition."""

    def test_phi(self):
        v = RatVector.of(1, 2, 3)
        assert phi(NFamily.of(3, {1}, {2, 3}), v) == 7
        assert phi(NFamily.of(3, {1, 2, 3}), v) == 6

    def test_phi_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            phi(NFamily.of(3, {1}), RatVector.of(1, 2))

    def test_leading_part_has_largest_max(self):
        fam = NFamily.of(4, {2, 3}, {1, 4})
        assert leading_part(fam) == frozenset({1, 4})
        assert leading_term(fam, RatVector.of(2, 3, 5, Fraction(1, 2))) == 1

    def test_part_product_empty(self):
        assert part_product((), RatVector.of(5)) == 1

    def test_predicates(self):
        assert is_extreme(NFamily.of(3, {1}, {2}, {3}))
        assert is_extreme(NFamily.of(3, {1, 3}))
        assert not is_extreme(NFamily.of(3, {1, 2}, {3}))
        assert is_lower(NFamily.of(3, {1, 2}, {3}))
        assert not is_lower(NFamily.of(3, {1}, {2, 3}))
        assert is_new(NFamily.of(3, {1}, {3}))
        assert not is_new(NFamily.of(3, {1}, {2}))

    def test_compose(self):
        """𝓙∘I⃗ replaces each index j by the block I_j."""
        outer = NFamily.of(2, {1}, {2})
        composed = compose(outer, [{1, 2}, {3}], ground=4)
        assert composed == NFamily.of(4, {1, 2}, {3})

    def test_compose_composition_law(self):
        outer = NFamily.of(2, {1, 2})
        blocks = [{1, 3}, {2}]
        v = RatVector.of(2, 3, 5)
        x = RatVector(tuple(part_product(b, v) for b in blocks))
        assert phi(compose(outer, blocks, ground=3), v) == phi(outer, x) == 30

    def test_compose_rejects_overlap(self):
        with pytest.raises(InvalidInputError):
            compose(NFamily.of(2, {1}, {2}), [{1, 2}, {2}])

    def test_newp(self):
        omega = newp([NFamily.of(3, {1}, {2, 3})])
        assert omega == RatioIndex((ratio_pair({1}, {2}),))

    def test_newp_rejects_old_family(self):
        with pytest.raises(InvalidInputError):
            newp([NFamily.of(3, {1}, {2})])


class TestEnumeration:
    """Test suite for family enumeration."""

    @pytest.mark.parametrize("n,count", [(1, 1), (2, 4), (3, 14), (4, 51)])
    def test_counts(self, n, count):
        assert len(enumerate_families(n)) == count

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_matches_brute_force(self, n):
        enumerated = enumerate_families(n)
        as_sets = {frozenset(f.parts) for f in enumerated}
        assert len(as_sets) == len(enumerated)
        assert as_sets == brute_force_families(n)

    def test_canonical_order(self):
        families = enumerate_families(3)
        assert families == sorted(families, key=family_sort_key)
        assert families[0] == NFamily.of(3, {1})

    def test_filters_partition(self):
        n = 4
        assert len(enumerate_all_new(n)) + len(old_families(n)) == len(enumerate_families(n))
        assert all(is_lower(f) for f in enumerate_lower(n))
        assert all(len(f.parts) > 1 and is_new(f) for f in enumerate_new_multi(n))

    def test_extreme_counts(self):
        assert len(enumerate_extreme(2)) == 4
        assert len(enumerate_extreme(3)) == 11

    def test_extreme_pattern_descriptors(self):
        names = [name for name, _ in extreme_pattern_families(2)]
        assert sorted(names) == ["prod:1,2", "sum:1", "sum:1|2", "sum:2"]

    def test_guard(self):
        with pytest.raises(BudgetExceededError):
            enumerate_families(4, max_ground=3)

    def test_ground_must_be_positive(self):
        with pytest.raises(InvalidInputError):
            enumerate_families(0)


class TestFamilyLiterals:
    """Test suite for family and ratio pair literals."""

    def test_parse_family(self):
        fam = parse_family("1|2,3")
        assert fam == NFamily.of(3, {1}, {2, 3})
        assert parse_family(str(fam)) == fam

    def test_parse_family_with_ground(self):
        assert parse_family("1", ground=3).ground == 3

    @pytest.mark.parametrize("text", ["", "1||2", "1|a", "1,2|2"])
    def test_parse_family_invalid(self, text):
        with pytest.raises(ParseError):
            parse_family(text)

    def test_json(self):
        fam = NFamily.of(4, {1, 4}, {2})
        assert family_to_json(fam) == [[2], [1, 4]]
        assert family_from_json([[2], [1, 4]], ground=4) == fam

    def test_parse_ratio_pair(self):
        assert parse_ratio_pair("(1,2|3)") == ratio_pair({1, 2}, {3})
        assert parse_ratio_pair("(1|)") == ratio_pair({1})
        assert str(ratio_pair({1, 2}, {3})) == "(1,2|3)"

    def test_parse_ratio_pair_invalid(self):
        with pytest.raises(ParseError):
            parse_ratio_pair("1|2")
