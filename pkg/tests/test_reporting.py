from fractions import Fraction

import pytest

from hindlab.core.arithmetic.schemas import NonnegRational, RatVector
from hindlab.core.errors import InvalidInputError, ParseError
from hindlab.core.families.schemas import NFamily
from hindlab.core.patterns.schemas import Check
from hindlab.core.reporting.identities import SUITES, run_suite, verify_identities
from hindlab.core.reporting.report import emit_report, parse_report, to_canonical


class TestCanonicalReports:
    """Test suite for the canonical JSON encoder."""

    def test_exact_text(self):
        assert emit_report({"x": Fraction(1, 2)}) == '{"checks":[],"schema_version":"1.0","x":"1/2"}'

    def test_integers_stay_integers(self):
        assert to_canonical({"n": 3, "q": Fraction(3)}) == {"n": 3, "q": "3/1"}

    def test_vectors_and_families(self):
        payload = to_canonical({"v": RatVector.of(1, Fraction(3, 2)), "fam": NFamily.of(2, {1}, {2})})
        assert payload["v"] == ["1/1", "3/2"]
        assert payload["fam"] == str(NFamily.of(2, {1}, {2}))

    def test_checks(self):
        assert to_canonical([Check("a", True)]) == [{"name": "a", "pass": True}]

    def test_sets_are_sorted(self):
        assert to_canonical({3, 1, 2}) == [1, 2, 3]

    def test_floats_refused(self):
        with pytest.raises(TypeError):
            emit_report({"x": 0.5})

    def test_keys_sorted(self):
        text = emit_report({"b": 1, "a": 2, "checks": [{"name": "c", "pass": True}]})
        assert text.index('"a"') < text.index('"b"') < text.index('"checks"')


class TestParseReport:
    """Test suite for reading reports back."""

    def test_rationals_decoded(self):
        data = parse_report('{"x":"1/2","n":3,"s":"abc","v":["1/1","3/1"]}')
        assert data["x"] == Fraction(1, 2)
        assert isinstance(data["x"], NonnegRational)
        assert data["n"] == 3
        assert data["s"] == "abc"
        assert data["v"] == [1, 3]

    def test_emitted_report_reads_back(self):
        data = parse_report(emit_report({"v": RatVector.of(Fraction(2, 3), 5)}))
        assert data["v"] == [Fraction(2, 3), 5]
        assert data["schema_version"] == "1.0"

    def test_zero_denominator_stays_text(self):
        assert parse_report('{"x":"1/0"}')["x"] == "1/0"

    def test_invalid_json(self):
        with pytest.raises(ParseError):
            parse_report("{")


class TestIdentitySuites:
    """Test suite for the seeded identity suites."""

    def test_all_suites_pass(self):
        result = verify_identities(seed=7, cases=50)
        assert result["found"]
        assert [s["name"] for s in result["suites"]] == list(SUITES)
        assert all(s["passed"] == 50 for s in result["suites"])

    def test_reproducible(self):
        assert verify_identities(seed=3, cases=20) == verify_identities(seed=3, cases=20)

    @pytest.mark.parametrize("name", sorted(SUITES))
    def test_each_suite(self, name):
        result = run_suite(name, seed=11, cases=30)
        assert result.ok
        assert result.first_failure is None

    def test_selected_suites(self):
        result = verify_identities(seed=1, cases=10, suites=["semiring", "homomorph"])
        assert [c["name"] for c in result["checks"]] == ["semiring", "homomorph"]

    def test_unknown_suite(self):
        with pytest.raises(InvalidInputError):
            run_suite("nope", seed=0, cases=1)

    def test_cases_positive(self):
        with pytest.raises(InvalidInputError):
            verify_identities(cases=0)
