from fractions import Fraction

import pytest

from hindlab.core.arithmetic.schemas import RatVector
from hindlab.core.errors import DimensionError, InvalidInputError, ParseError
from hindlab.core.families.calculus import leading_term, phi
from hindlab.core.families.schemas import NFamily, RatioIndex, ratio_pair
from hindlab.core.perturbations.algebra import (
    apply,
    commute_dilation_past_shift,
    compose,
    compose_all,
    family_shift,
    identity_perturbation,
    project_point,
    pure_dilation,
    ratio_vector,
    tilde,
    uncommute_shift_past_dilation,
)
from hindlab.core.perturbations.schemas import Dilation, Perturbation, PointX, RatioWeights, Shift
from hindlab.core.perturbations.utils import format_perturbation, parse_perturbation, perturbation_to_json


@pytest.fixture
def omega():
    """Ω = {({1}|), ({1}|{2}), ({1,2}|)} over u of length 2."""
    return RatioIndex((ratio_pair({1}), ratio_pair({1}, {2}), ratio_pair({1, 2})))


@pytest.fixture
def point():
    return PointX(RatVector.of(2, Fraction(1, 3)), Fraction(5, 2))


class TestRatioWeights:
    """Test suite for weight vectors over a ratio index."""

    def test_from_mapping_fills_zeros(self, omega):
        w = RatioWeights.from_mapping(omega, {ratio_pair({1}): 3})
        assert w[ratio_pair({1})] == 3
        assert w.support() == (ratio_pair({1}),)
        assert not w.is_zero()

    def test_unknown_pair_rejected(self, omega):
        with pytest.raises(InvalidInputError):
            RatioWeights.from_mapping(omega, {ratio_pair({3}): 1})

    def test_length_checked(self, omega):
        with pytest.raises(DimensionError):
            RatioWeights(omega, (1, 2))

    def test_negative_weight_rejected(self, omega):
        with pytest.raises(InvalidInputError):
            RatioWeights(omega, (1, -1, 0))

    def test_dot_and_hadamard(self, omega):
        a = RatioWeights(omega, (1, 2, 3))
        b = RatioWeights(omega, (Fraction(1, 2), 1, 0))
        assert a.dot(b) == Fraction(5, 2)
        assert a.hadamard(b).values == (Fraction(1, 2), 2, 0)

    def test_restricted_drops_zero_pairs_only(self, omega):
        w = RatioWeights(omega, (1, 0, 0))
        small = RatioIndex((ratio_pair({1}),))
        assert w.restricted(small).values == (1,)
        with pytest.raises(InvalidInputError):
            RatioWeights(omega, (1, 1, 0)).restricted(small)


class TestOperators:
    """Test suite for shifts, dilations and their normal form."""

    def test_ratio_vector(self, omega):
        rho = ratio_vector(RatVector.of(2, 3), omega)
        assert rho.values == (2, Fraction(2, 3), 6)

    def test_ratio_vector_dimension(self, omega):
        with pytest.raises(DimensionError):
            ratio_vector(RatVector.of(2), omega)

    def test_tilde(self, omega):
        assert tilde(2, omega).values == (2, 1, 4)

    def test_basic_identity(self, omega):
        """ρ_{q·u} = q̃ ⊙ ρ_u."""
        u, q = RatVector.of(2, 3), Fraction(3, 2)
        scaled = RatVector(tuple(q * e for e in u))
        assert ratio_vector(scaled, omega) == tilde(q, omega).hadamard(ratio_vector(u, omega))

    def test_apply_shift(self, omega, point):
        sigma = Shift(RatioWeights.from_mapping(omega, {ratio_pair({1}): 1}))
        moved = apply(sigma, point)
        assert moved.u == point.u
        assert moved.x == Fraction(5, 2) + 2

    def test_apply_dilation(self, point):
        moved = apply(Dilation(2, 3), point)
        assert moved.u == RatVector.of(4, Fraction(2, 3))
        assert moved.x == Fraction(15, 2)

    def test_commutation_rules(self, omega, point):
        lam = RatioWeights(omega, (1, Fraction(1, 2), 2))
        R = Dilation(Fraction(3, 2), 5)
        sigma = Shift(lam)
        assert apply(R, apply(sigma, point)) == apply(Shift(commute_dilation_past_shift(lam, R)), apply(R, point))
        assert apply(sigma, apply(R, point)) == apply(R, apply(Shift(uncommute_shift_past_dilation(lam, R)), point))

    def test_compose_acts_right_to_left(self, omega, point):
        p1 = Perturbation(Shift(RatioWeights(omega, (1, 0, 2))), Dilation(2, Fraction(1, 3)))
        p2 = Perturbation(Shift(RatioWeights(omega, (0, 3, 1))), Dilation(Fraction(1, 2), 4))
        assert apply(compose(p1, p2), point) == apply(p1, apply(p2, point))

    def test_compose_all(self, omega, point):
        ps = [pure_dilation(2, 2, omega), Perturbation(Shift(RatioWeights(omega, (1, 1, 1))), Dilation(1, 1))]
        expected = apply(ps[0], apply(ps[1], point))
        assert apply(compose_all(ps, omega), point) == expected

    def test_identity(self, omega, point):
        assert identity_perturbation(omega).is_identity
        assert apply(identity_perturbation(omega), point) == point

    def test_compose_rejects_mixed_index(self, omega):
        other = RatioIndex((ratio_pair({2}),))
        with pytest.raises(InvalidInputError):
            compose(identity_perturbation(omega), identity_perturbation(other))

    def test_project_point(self, point):
        assert project_point(point, {1, 2}) == Fraction(5, 2) * 2 * Fraction(1, 3)
        assert project_point(point, ()) == point.x


class TestFamilyShift:
    """Test suite for σ_𝓘 and the family shift identity."""

    def test_weights(self):
        fam = NFamily.of(3, {1}, {2, 3})
        sigma = family_shift(fam)
        assert sigma.weights.as_dict() == {"(1|2)": 1}

    def test_identity(self):
        """φ_𝓘(u; x) equals the leading term of σ_𝓘(u; x)."""
        fam = NFamily.of(3, {1}, {2, 3})
        pt = PointX(RatVector.of(Fraction(2, 3), 5), Fraction(7, 4))
        shifted = apply(family_shift(fam), pt)
        assert phi(fam, pt.as_vector()) == leading_term(fam, shifted.as_vector())

    def test_old_family_rejected(self):
        with pytest.raises(InvalidInputError):
            family_shift(NFamily.of(3, {1}, {2}))


class TestLiterals:
    """Test suite for the perturbation text format."""

    def test_parse(self):
        p = parse_perturbation("shift{(1|2):3/2} dil{2,3}")
        assert p.shift.weights[ratio_pair({1}, {2})] == Fraction(3, 2)
        assert (p.dilation.q1, p.dilation.q2) == (2, 3)

    def test_format_round_trip(self, omega):
        p = Perturbation(Shift(RatioWeights(omega, (0, Fraction(1, 2), 4))), Dilation(Fraction(2, 3), 1))
        assert parse_perturbation(format_perturbation(p), omega) == p

    @pytest.mark.parametrize("text", [
        "shift{} dil{2}",
        "shift{(1|):1;(1|):2} dil{1,1}",
        "dil{1,1}",
        "shift{(1|)} dil{1,1}",
    ])
    def test_parse_invalid(self, text):
        with pytest.raises(ParseError):
            parse_perturbation(text)

    def test_json(self, omega):
        data = perturbation_to_json(identity_perturbation(omega))
        assert data["dilation"] == [1, 1]
        assert data["literal"].startswith("shift{")
